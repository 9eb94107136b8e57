"""Rational polyhedral cone decision procedures: membership, duality certificates, the Langlands retraction, and support shapes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .linalg import dot, fvec, nullspace, primitive_vector
from .rootdata import ParabolicType, RootDatum, pair

RANK_CAP = 4  # exact double description is only run for ranks up to this bound


class ConeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-1 simplex with Bland's rule)


def nonneg_combination(gens, target):
    """Coefficients c >= 0 with sum c_i gens_i = target, or None if infeasible. Exact over Q."""
    gens = [fvec(g) for g in gens]
    t = fvec(target)
    n = len(gens)
    if all(x == 0 for x in t):
        return [Fraction(0)] * n
    if n == 0:
        return None
    m = len(t)
    a = [[gens[j][i] for j in range(n)] for i in range(m)]
    b = list(t)
    for i in range(m):
        if b[i] < 0:
            b[i] = -b[i]
            a[i] = [-x for x in a[i]]
    ncols = n + m
    rows = [a[i] + [Fraction(int(k == i)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced-cost row for minimizing the sum of artificial variables
    w = [sum(rows[i][j] for i in range(m)) - (1 if j >= n else 0) for j in range(ncols)]
    w.append(sum(b))
    while True:
        enter = next((j for j in range(ncols) if w[j] > 0), None)  # Bland: smallest index
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("phase-1 simplex unbounded")  # impossible: objective >= 0
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        if w[enter] != 0:
            f = w[enter]
            w = [x - f * y for x, y in zip(w, rows[leave])]
        basis[leave] = enter
    if w[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = rows[i][-1]
    return x


def in_cone(gens, v) -> bool:
    return nonneg_combination(gens, v) is not None


def cone_leq(gens_a, gens_b) -> bool:
    """cone(gens_a) subseteq cone(gens_b)."""
    return all(in_cone(gens_b, g) for g in gens_a)


# ---------------------------------------------------------------------------
# double description: extreme rays of {y : <c, y> >= 0 for all constraints c}


def rays_from_inequalities(constraints, dim: int):
    """Return (lineality_basis, extreme_rays) of the cone cut out by the constraints."""
    cons = []
    seen = set()
    for c in constraints:
        c = fvec(c)
        if all(x == 0 for x in c):
            continue
        key = primitive_vector(c)
        if key not in seen:
            seen.add(key)
            cons.append(key)
    if not cons:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)], []
    lin = nullspace(cons)
    pivots = _pivot_columns(lin)
    comp = [tuple(Fraction(int(i == j)) for i in range(dim)) for j in range(dim) if j not in pivots]
    d2 = len(comp)
    if d2 == 0:
        return lin, []
    cons2 = [tuple(dot(c, e) for e in comp) for c in cons]
    rays2 = set()
    for subset in combinations(range(len(cons2)), d2 - 1):
        ns = nullspace([cons2[s] for s in subset] or [(Fraction(0),) * d2])
        if len(ns) != 1:
            continue
        v = ns[0]
        vals = [dot(c, v) for c in cons2]
        if all(x >= 0 for x in vals):
            rays2.add(primitive_vector(v))
        elif all(x <= 0 for x in vals):
            rays2.add(primitive_vector(tuple(-x for x in v)))
    rays = sorted(
        primitive_vector(tuple(sum(v[k] * comp[k][i] for k in range(d2)) for i in range(dim))) for v in rays2
    )
    # drop rays that are not extreme (possible when constraints are degenerate)
    out = []
    for i, r in enumerate(rays):
        others = [x for j, x in enumerate(rays) if j != i] + [l for l in lin] + [vneg_t(l) for l in lin]
        if not in_cone(others, r):
            out.append(r)
    return lin, out


def vneg_t(v):
    return tuple(-Fraction(x) for x in v)


def _pivot_columns(rows) -> set[int]:
    if not rows:
        return set()
    _, pivots = linalg._rref([list(r) for r in rows])
    return set(pivots)


def primal_constraints(gens, dim: int):
    """(equalities, inequalities) cutting out cone(gens): equalities from the dual lineality."""
    lin, rays = rays_from_inequalities(gens, dim)
    return lin, rays


# ---------------------------------------------------------------------------
# named cones


@dataclass(frozen=True)
class ConeId:
    tag: str
    indices: frozenset | None = None

    def __str__(self):
        if self.indices is None:
            return self.tag
        return f"{self.tag}({sorted(self.indices)})"


def pos_G() -> ConeId:
    return ConeId("pos_G")


def neg_pos_G() -> ConeId:
    return ConeId("neg_pos_G")


def pos_U(indices) -> ConeId:
    return ConeId("pos_U", frozenset(indices))


def neg_pos_U(indices) -> ConeId:
    return ConeId("neg_pos_U", frozenset(indices))


def dom_M(indices) -> ConeId:
    return ConeId("dom_M", frozenset(indices))


def pos_GP(indices) -> ConeId:
    return ConeId("pos_GP", frozenset(indices))


def neg_pos_GP(indices) -> ConeId:
    return ConeId("neg_pos_GP", frozenset(indices))


def cone_generators(rd: RootDatum, cone: ConeId):
    """A finite generating set (lineality directions appear with both signs)."""
    tag = cone.tag
    if tag in ("pos_G", "neg_pos_G"):
        gens = [fvec(a) for a in rd.positive_coroots]
        return gens if tag == "pos_G" else [vneg_t(g) for g in gens]
    if cone.indices is None:
        raise ConeError(f"cone {tag} requires a parabolic index set")
    par = ParabolicType(rd, cone.indices)
    if tag in ("pos_U", "neg_pos_U"):
        gens = [fvec(a) for a in par.pos_coroots_unipotent]
        return gens if tag == "pos_U" else [vneg_t(g) for g in gens]
    if tag == "dom_M":
        rows = [fvec(rd.simple_roots[j]) for j in sorted(cone.indices)]
        lin, rays = rays_from_inequalities(rows, rd.rank)
        return rays + lin + [vneg_t(l) for l in lin]
    if tag in ("pos_GP", "neg_pos_GP"):
        gens = []
        seen = set()
        for a in rd.positive_coroots:
            v = par.project(a)
            if any(x != 0 for x in v):
                key = tuple(v)
                if key not in seen:
                    seen.add(key)
                    gens.append(key)
        return gens if tag == "pos_GP" else [vneg_t(g) for g in gens]
    raise ConeError(f"unknown cone tag {tag!r}")


def cone_member(rd: RootDatum, cone: ConeId, lam) -> bool:
    """lam lies in the rational cone generated by the named cone's generators."""
    return in_cone(cone_generators(rd, cone), fvec(lam))


# ---------------------------------------------------------------------------
# support shapes


@dataclass(frozen=True)
class SupportShape:
    """The set {theta + c : theta in base, c in cone}; carrier for boundedness predicates."""

    base: tuple
    cone: ConeId

    @staticmethod
    def make(base, cone: ConeId) -> "SupportShape":
        pts = sorted(set(fvec(b) for b in base))
        return SupportShape(tuple(pts), cone)

    def contains(self, rd: RootDatum, lam) -> bool:
        lam = fvec(lam)
        gens = cone_generators(rd, self.cone)
        return any(in_cone(gens, tuple(x - y for x, y in zip(lam, b))) for b in self.base)

    def shift_base(self, rd: RootDatum, offsets) -> "SupportShape":
        pts = [tuple(Fraction(x) + Fraction(y) for x, y in zip(b, o)) for b in self.base for o in offsets]
        return SupportShape.make(pts, self.cone)


def dominant_weight_rays(rd: RootDatum):
    """(lineality, rays) of the rational dominant-weight cone."""
    return rays_from_inequalities([fvec(a) for a in rd.simple_coroots], rd.rank)


def bounded_above(rd: RootDatum, shape: SupportShape) -> bool:
    """True iff every dominant weight is bounded above on the shape.

    By linearity it suffices that every extreme ray of the dominant-weight cone
    is nonpositive on the shape's cone (the base is finite by construction).
    """
    lin, rays = dominant_weight_rays(rd)
    tests = list(rays) + list(lin) + [vneg_t(l) for l in lin]
    gens = cone_generators(rd, shape.cone)
    return all(dot(chi, g) <= 0 for chi in tests for g in gens)


# ---------------------------------------------------------------------------
# cone certificates


def check_pos_U_intersection(rd: RootDatum, par: ParabolicType) -> bool:
    """Certificate that pos_U equals the intersection of w(pos_G) over w in W_M."""
    if rd.rank > RANK_CAP:
        raise ConeError(f"rank {rd.rank} exceeds the double-description cap {RANK_CAP}")
    pos_u = [fvec(a) for a in par.pos_coroots_unipotent]
    eqs, ineqs = primal_constraints([fvec(a) for a in rd.positive_coroots], rd.rank)
    all_cons = []
    for w in sorted(par.weyl_levi):
        for e in eqs:
            we = rd.act_on_weight(w, e)
            all_cons.append(fvec(we))
            all_cons.append(vneg_t(we))
        for c in ineqs:
            all_cons.append(fvec(rd.act_on_weight(w, c)))
    # inclusion pos_U subseteq intersection: every generator satisfies every constraint
    for g in pos_u:
        if any(dot(c, g) < 0 for c in all_cons):
            return False
    # inclusion intersection subseteq pos_U: every extreme ray is a nonneg combination
    lin, rays = rays_from_inequalities(all_cons, rd.rank)
    for v in list(rays) + list(lin) + [vneg_t(l) for l in lin]:
        if not in_cone(pos_u, v):
            return False
    return True


def check_pos_U_consequent(rd: RootDatum, par: ParabolicType) -> bool:
    """Certificate that pos_U meets -dom_M in the same cone as pos_G does."""
    neg_dom = [vneg_t(fvec(rd.simple_roots[j])) for j in sorted(par.indices)]

    def side(gens):
        eqs, ineqs = primal_constraints(gens, rd.rank)
        cons = list(ineqs) + list(eqs) + [vneg_t(e) for e in eqs] + neg_dom
        lin, rays = rays_from_inequalities(cons, rd.rank)
        return lin, rays, cons

    lin1, rays1, cons1 = side([fvec(a) for a in par.pos_coroots_unipotent])
    lin2, rays2, cons2 = side([fvec(a) for a in rd.positive_coroots])
    pts1 = list(rays1) + list(lin1) + [vneg_t(l) for l in lin1]
    pts2 = list(rays2) + list(lin2) + [vneg_t(l) for l in lin2]
    return all(all(dot(c, v) >= 0 for c in cons2) for v in pts1) and all(
        all(dot(c, v) >= 0 for c in cons1) for v in pts2
    )


def check_dual_cone(rd: RootDatum, par: ParabolicType) -> bool:
    """Certificate that W_M . (dominant weights) is exactly the dual cone of pos_U."""
    if rd.rank > RANK_CAP:
        raise ConeError(f"rank {rd.rank} exceeds the double-description cap {RANK_CAP}")
    gens_u = [fvec(a) for a in par.pos_coroots_unipotent]
    lin_c, rays_c = dominant_weight_rays(rd)
    chamber_pts = list(rays_c) + list(lin_c) + [vneg_t(l) for l in lin_c]
    w_levi = sorted(par.weyl_levi)
    # (i) every W_M-translate of the dominant cone pairs >= 0 with pos_U
    for w in w_levi:
        for v in chamber_pts:
            wv = tuple(dot(fvec(v), col) for col in zip(*rd.w_inverse(w)))
            if any(dot(wv, g) < 0 for g in gens_u):
                return False
    # (ii) every extreme ray of the dual cone lies in some W_M-translate of the dominant cone
    lin_d, rays_d = rays_from_inequalities(gens_u, rd.rank)
    for v in list(rays_d) + list(lin_d) + [vneg_t(l) for l in lin_d]:
        if not any(
            all(pair(tuple(dot(fvec(v), col) for col in zip(*rd.w_inverse(w))), a) >= 0 for a in rd.simple_coroots)
            for w in w_levi
        ):
            return False
    # (iii) wall-gluing: chamber walls not internal to W_M lie on the boundary of the dual cone
    for w in w_levi:
        for i in range(rd.n_simple):
            if i in par.indices:
                continue  # glued to the neighboring chamber w s_i inside W_M
            wall_cons = [fvec(a) for a in rd.simple_coroots] + [vneg_t(fvec(rd.simple_coroots[i]))]
            lin_w, rays_w = rays_from_inequalities(wall_cons, rd.rank)
            wall_pts = list(rays_w) + list(lin_w) + [vneg_t(l) for l in lin_w]
            translated = [tuple(dot(fvec(v), col) for col in zip(*rd.w_inverse(w))) for v in wall_pts]
            if not any(all(dot(tv, g) == 0 for tv in translated) for g in gens_u):
                return False
    return True


# ---------------------------------------------------------------------------
# Langlands retraction


def langlands_retraction(rd: RootDatum, lam):
    """The least dominant coweight majorizing lam, with its linearity-domain index set.

    Solved by exhausting subsets J: find c_j >= 0 with <alpha-check_i, lam + sum c_j alpha_j> = 0
    on J and >= 0 off J. All admissible subsets must agree on the retracted value; the
    smallest admissible J is returned (ties on linearity walls admit several).
    """
    lam = fvec(lam)
    n = rd.n_simple
    solutions = []
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if idx:
            a = [[Fraction(rd.cartan[i][j]) for j in idx] for i in idx]
            rhs = [-pair(rd.simple_roots[i], lam) for i in idx]
            try:
                coeffs = linalg.mat_vec(linalg.inverse(a), rhs)
            except ValueError:
                continue
            if any(c < 0 for c in coeffs):
                continue
            val = list(lam)
            for ji, j in enumerate(idx):
                for r in range(rd.rank):
                    val[r] += coeffs[ji] * rd.simple_coroots[j][r]
            val = tuple(val)
        else:
            val = lam
        if all(pair(rd.simple_roots[k], val) >= 0 for k in range(n) if k not in idx):
            solutions.append((frozenset(idx), val))
    if not solutions:
        raise ConeError("no linearity domain admits a solution (invalid root datum?)")
    vals = {v for _, v in solutions}
    if len(vals) != 1:
        raise ConeError(f"inconsistent retraction values across linearity domains: {sorted(vals)}")
    best = min(solutions, key=lambda s: (len(s[0]), tuple(sorted(s[0]))))
    return best[1], best[0]


def check_retraction_property(rd: RootDatum, par: ParabolicType, lam) -> bool:
    """For Levi-dominant lam: the retraction moves lam inside pos_U and against the M-dominant cone."""
    lam = fvec(lam)
    if not par.is_levi_dominant(lam):
        raise ConeError("lam is not M-dominant")
    val, _ = langlands_retraction(rd, lam)
    diff = tuple(a - b for a, b in zip(val, lam))
    if not in_cone([fvec(a) for a in par.pos_coroots_unipotent], diff):
        return False
    return rd.is_dominant(vneg_t(diff), par.indices)
