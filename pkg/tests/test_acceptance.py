"""Acceptance gate: every exit criterion runs at its stated tolerance (exact) and prints one line."""

import pytest

from heckelat import acceptance


@pytest.mark.parametrize("check", acceptance.ALL_CHECKS, ids=lambda c: c.check_name)
def test_acceptance_criterion(check):
    result = check()
    print(result.line())
    assert result.passed, result.detail
