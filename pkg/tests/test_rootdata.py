import json
from fractions import Fraction

import pytest

from heckelat import cones
from heckelat.rootdata import (
    PRESET_NAMES,
    RootDatumError,
    dominance_leq,
    load_root_datum,
    mat_apply,
    pair,
    parabolic,
)

# orders from the classification, used as the enumeration oracle
WEYL_ORDERS = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24, "B3": 48, "C3": 48, "GL2": 2}
POSITIVE_COUNTS = {"A1": 1, "A2": 3, "B2": 4, "G2": 6, "A3": 6, "B3": 9, "C3": 9, "GL2": 1}


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_load_and_enumerate(name):
    rd = load_root_datum(name)
    assert len(rd.weyl_elements) == WEYL_ORDERS[name]
    assert len(rd.positive_coroots) == POSITIVE_COUNTS[name]
    # w0 sends positives to negatives
    neg = {tuple(-x for x in a) for a in rd.positive_coroots}
    assert all(tuple(int(x) for x in mat_apply(rd.w0, a)) in neg for a in rd.positive_coroots)


def test_a2_positive_coroots_from_closure():
    rd = load_root_datum("A2")
    assert set(rd.positive_coroots) == {(1, 0), (0, 1), (1, 1)}


def test_every_weyl_element_permutes_coroots():
    for name in ("A2", "B2", "G2"):
        rd = load_root_datum(name)
        for w in rd.weyl_elements:
            image = {tuple(int(x) for x in mat_apply(w, a)) for a in rd.coroots}
            assert image == set(rd.coroots)


def test_load_rejects_bad_pairing():
    config = {
        "name": "bad",
        "rank": 1,
        "cartan": [[3]],
        "simple_coroots": [[1]],
        "simple_roots": [[3]],
    }
    with pytest.raises(RootDatumError):
        load_root_datum(config)


def test_load_rejects_non_finite_type():
    config = {
        "name": "affine",
        "rank": 2,
        "cartan": [[2, -2], [-2, 2]],
        "simple_coroots": [[1, 0], [0, 1]],
        "simple_roots": [[2, -2], [-2, 2]],
    }
    with pytest.raises(RootDatumError):
        load_root_datum(config)


def test_load_rejects_inconsistent_declared_cartan():
    rd = load_root_datum("A2")
    config = rd.config()
    config["cartan"] = [[2, 0], [0, 2]]
    with pytest.raises(RootDatumError):
        load_root_datum(json.dumps(config))


def test_load_is_deterministic():
    a = load_root_datum("B2")
    b = load_root_datum(json.dumps(load_root_datum("B2").config()))
    assert a.config() == b.config()
    assert a.weyl_elements == b.weyl_elements


def test_parabolic_caches():
    rd = load_root_datum("A2")
    par = parabolic(rd, [0])
    assert set(par.pos_coroots_levi) == {(1, 0)}
    assert set(par.pos_coroots_unipotent) == {(0, 1), (1, 1)}
    # the parabolic half-sum annihilates the Levi coroots
    assert pair(par.two_rho_check_P, (1, 0)) == 0
    # w0 of the Levi is an involution
    sq = tuple(tuple(int(x) for x in mat_apply(par.w0_levi, row)) for row in zip(*((1, 0), (0, 1))))
    assert par.w0_levi != rd.w0


def test_projection_kills_levi_and_fixes_slice():
    rd = load_root_datum("A3")
    par = parabolic(rd, [0, 2])
    for j in par.indices:
        assert all(x == 0 for x in par.project(rd.simple_coroots[j]))
    lam = (1, 2, -1)
    proj = par.project(lam)
    assert par.project(proj) == proj


def test_dominance_order_properties():
    rd = load_root_datum("A2")
    full = parabolic(rd, [0, 1])
    p0 = parabolic(rd, [0])
    assert dominance_leq(rd, full, (1, 1), (0, 0))
    assert not dominance_leq(rd, p0, (0, 1), (0, 0))
    assert dominance_leq(rd, full, (Fraction(2, 3), Fraction(1, 3)), (0, 0))
    # reflexive / antisymmetric / transitive on a small sample
    pts = [(0, 0), (1, 0), (1, 1), (2, 1), (-1, 2)]
    for a in pts:
        assert dominance_leq(rd, full, a, a)
        for b in pts:
            if a != b and dominance_leq(rd, full, a, b) and dominance_leq(rd, full, b, a):
                raise AssertionError("antisymmetry violated")
            for c in pts:
                if dominance_leq(rd, full, a, b) and dominance_leq(rd, full, b, c):
                    assert dominance_leq(rd, full, a, c)


def test_gl2_non_semisimple():
    rd = load_root_datum("GL2")
    assert rd.rank == 2 and rd.n_simple == 1
    par = parabolic(rd, [])
    assert cones.cone_member(rd, cones.pos_G(), (1, -1))
    assert not cones.cone_member(rd, cones.pos_G(), (1, 0))


def test_dominant_representative():
    rd = load_root_datum("B2")
    for lam in [(-3, 1), (2, -5), (0, 0)]:
        rep = rd.dominant_representative(lam)
        assert rd.is_dominant(rep)
        assert any(
            tuple(Fraction(x) for x in mat_apply(w, lam)) == tuple(rep) for w in rd.weyl_elements
        )


def test_weyl_cap_signals_error():
    from heckelat.rootdata import RootDatum, WeylEnumerationError, weyl_elements

    with pytest.raises(WeylEnumerationError):
        RootDatum("B2-capped", 2, [[1, 0], [0, 1]], [[2, -1], [-2, 2]], weyl_cap=3)
    rd = load_root_datum("B2")
    assert len(weyl_elements(rd)) == 8


def test_invert_unit_is_unit():
    from heckelat import hecke as hk

    rd = load_root_datum("A2")
    par = parabolic(rd, [])
    unit = hk.GradedSeries.unit(rd, par, 6)
    assert unit.invert() == unit


def test_levi_involution_fixes_projection_classes():
    from heckelat.rootdata import mat_apply as _ma

    rd = load_root_datum("B2")
    for J in ([0], [1]):
        par = parabolic(rd, J)
        for lam in [(1, 0), (0, 1), (2, -1), (-1, 3)]:
            moved = tuple(int(x) for x in _ma(par.w0_levi, lam))
            assert par.project(moved) == par.project(lam)
