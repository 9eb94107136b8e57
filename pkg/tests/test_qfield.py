from fractions import Fraction

import pytest

from heckelat.qfield import ONE, Q, QFieldError, RatFunc, ZERO, as_ratfunc, q_pow


def test_basic_identities():
    assert (Q**2 - 1) / (Q - 1) == Q + 1
    assert (Q + 1) * (Q - 1) == Q**2 - 1
    assert q_pow(-3) * q_pow(5) == Q**2
    assert q_pow(0) == ONE
    assert (Q / Q) == ONE
    assert Q - Q == ZERO


def test_canonical_form():
    r = RatFunc((2, 2), (4,))
    assert r.num == (1, 1) and r.den == (2,)
    s = RatFunc((0, -1), (0, 0, -1))
    # -q / -q^2 = 1/q
    assert s == q_pow(-1)
    assert s.den[-1] > 0


def test_eval_and_zero_division():
    f = (ONE - q_pow(-1)) * (Q + 1)
    assert f.eval(Fraction(2)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        q_pow(-1).eval(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_double_exponents():
    f = (Q**3 - 2 * Q) / (Q + 1)
    g = f.double_exponents()
    assert g == (Q**6 - 2 * Q**2) / (Q**2 + 1)


def test_half_power_rejected():
    with pytest.raises(QFieldError):
        q_pow(Fraction(3, 2))


def test_pow_and_coerce():
    assert as_ratfunc(Fraction(3, 4)) * 4 == 3
    assert (Q + 1) ** 0 == ONE
    assert (Q**2) ** -1 == q_pow(-2)
    assert 2 - Q == -(Q - 2)


def test_str_is_deterministic():
    f = (Q**2 - Q) / (Q + 1)
    assert str(f) == str((Q**2 - Q) / (Q + 1))
    assert str(Q**2 - Q) == "q^2 - q"
