import random
from fractions import Fraction

import pytest

from heckelat import cones
from heckelat.cones import SupportShape, in_cone, langlands_retraction, nonneg_combination
from heckelat.rootdata import ParabolicType, load_root_datum, parabolic


def brute_member(gens, target, grid=5):
    """Tiny brute-force feasibility oracle over a rational grid (only for 1-2 generators)."""
    from itertools import product

    steps = [Fraction(i, 2) for i in range(0, 2 * grid + 1)]
    for coeffs in product(steps, repeat=len(gens)):
        cand = tuple(
            sum((c * Fraction(g[k]) for c, g in zip(coeffs, gens)), Fraction(0))
            for k in range(len(target))
        )
        if cand == tuple(Fraction(x) for x in target):
            return True
    return False


def test_nonneg_combination_against_brute():
    gens = [(0, 1), (1, 1)]
    rng = random.Random(3)
    for _ in range(60):
        target = (rng.randint(-3, 3), rng.randint(-3, 3))
        got = nonneg_combination(gens, target) is not None
        assert got == brute_member(gens, target, grid=8), target


def test_cone_member_examples():
    rd = load_root_datum("A2")
    assert cones.cone_member(rd, cones.pos_U([0]), (1, 1))
    assert not cones.cone_member(rd, cones.pos_U([0]), (1, 0))
    assert cones.cone_member(rd, cones.pos_U([0]), (0, 0))
    coeffs = nonneg_combination([(0, 1), (1, 1)], (1, 2))
    assert coeffs is not None and all(c >= 0 for c in coeffs)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "GL2", "A3", "B3", "C3"])
def test_cone_certificates_all_parabolics(name):
    rd = load_root_datum(name)
    for mask in range(1 << rd.n_simple):
        J = [i for i in range(rd.n_simple) if mask >> i & 1]
        par = ParabolicType(rd, J)
        assert cones.check_pos_U_intersection(rd, par)
        assert cones.check_dual_cone(rd, par)
        assert cones.check_pos_U_consequent(rd, par)


def test_retraction_examples():
    rd1 = load_root_datum("A1")
    val, J = langlands_retraction(rd1, (-1,))
    assert val == (Fraction(0),) and J == frozenset({0})
    rd2 = load_root_datum("A2")
    val, J = langlands_retraction(rd2, (-1, 0))
    assert val == (Fraction(0), Fraction(0)) and J == frozenset({0})
    lam = (Fraction(3), Fraction(2))  # strictly dominant: fixed with empty domain
    val, J = langlands_retraction(rd2, lam)
    assert val == lam and J == frozenset()


def test_retraction_idempotent_dominant_minimal():
    rng = random.Random(41)
    for name in ("A2", "B2", "G2"):
        rd = load_root_datum(name)
        pos = [cones.fvec(a) for a in rd.positive_coroots]
        for _ in range(60):
            lam = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(rd.rank))
            val, _ = langlands_retraction(rd, lam)
            assert rd.is_dominant(val)
            assert in_cone(pos, tuple(a - b for a, b in zip(val, lam)))
            val2, _ = langlands_retraction(rd, val)
            assert val2 == val


def test_retraction_property_sweep():
    rng = random.Random(42)
    for name in ("A2", "B2"):
        rd = load_root_datum(name)
        for mask in range(1 << rd.n_simple):
            J = [i for i in range(rd.n_simple) if mask >> i & 1]
            par = ParabolicType(rd, J)
            for _ in range(25):
                lam = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(rd.rank))
                lam_m = tuple(rd.dominant_representative(lam, par.indices))
                assert cones.check_retraction_property(rd, par, lam_m)


def test_retraction_property_rejects_non_dominant():
    rd = load_root_datum("A2")
    par = parabolic(rd, [0])
    with pytest.raises(cones.ConeError):
        cones.check_retraction_property(rd, par, (-1, 0))


def test_downward_saturation_in_support_cone():
    # within a bounded window: Levi-dominant points below a pos_U point stay in pos_U
    rd = load_root_datum("A2")
    par = parabolic(rd, [0])
    pos_u = [cones.fvec(a) for a in par.pos_coroots_unipotent]
    window = [(a, b) for a in range(-4, 5) for b in range(-4, 5)]
    from heckelat.rootdata import dominance_leq

    dominant = [p for p in window if par.is_levi_dominant(p)]
    for hi in dominant:
        if not in_cone(pos_u, hi):
            continue
        for lo in dominant:
            if dominance_leq(rd, par, hi, lo):
                assert in_cone(pos_u, lo), (hi, lo)


def test_bounded_above_examples():
    rd = load_root_datum("A2")
    assert cones.bounded_above(rd, SupportShape.make([(0, 0)], cones.neg_pos_G()))
    assert not cones.bounded_above(rd, SupportShape.make([(0, 0)], cones.pos_G()))
    assert cones.bounded_above(rd, SupportShape.make([(1, 0)], cones.neg_pos_U([0])))


def test_support_shape_contains():
    rd = load_root_datum("A2")
    shape = SupportShape.make([(1, 0)], cones.neg_pos_U([0]))
    assert shape.contains(rd, (1, 0))
    assert shape.contains(rd, (0, -1))
    assert not shape.contains(rd, (2, 0))


def test_rank_cap_enforced():
    config = {
        "name": "A5",
        "rank": 5,
        "cartan": [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(5)] for i in range(5)],
        "simple_coroots": [[int(i == j) for j in range(5)] for i in range(5)],
        "simple_roots": [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(5)] for i in range(5)],
    }
    rd = load_root_datum(config)
    with pytest.raises(cones.ConeError):
        cones.check_dual_cone(rd, ParabolicType(rd, []))
