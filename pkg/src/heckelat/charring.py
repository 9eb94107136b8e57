"""Character calculus for the dual Levi: graded pieces of the nilpotent radical, exterior/symmetric power series, and irreducible decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import ONE, RatFunc, ZERO, as_ratfunc
from .rootdata import ParabolicType, RootDatum, Vec, dominance_leq, mat_apply, pair


class CharError(ValueError):
    pass


@dataclass(frozen=True)
class GradedPiece:
    """One graded piece of the dual nilpotent radical: its level and its weight multiset."""

    level: Fraction
    weights: tuple[Vec, ...]  # sorted, with multiplicity


def u_P_graded_pieces(rd: RootDatum, par: ParabolicType) -> list[GradedPiece]:
    """Partition of the non-Levi positive coroots by the pairing with rho_P (levels ascending)."""
    buckets: dict[Fraction, list[Vec]] = {}
    for a in par.pos_coroots_unipotent:
        lvl = Fraction(pair(par.two_rho_check_P, a), 2)
        if lvl <= 0:
            raise CharError(f"nonpositive grading level {lvl} for weight {a}")
        buckets.setdefault(lvl, []).append(tuple(int(x) for x in a))
    return [GradedPiece(lvl, tuple(sorted(ws))) for lvl, ws in sorted(buckets.items())]


class WeightFunction:
    """Finitely supported integer multiplicity function on the coweight lattice."""

    def __init__(self, mults: dict):
        self.mults: dict[Vec, int] = {tuple(int(x) for x in k): int(v) for k, v in mults.items() if v}

    def __eq__(self, other):
        return isinstance(other, WeightFunction) and self.mults == other.mults

    def __repr__(self):
        return f"WeightFunction({self.mults})"

    def is_levi_invariant(self, rd: RootDatum, par: ParabolicType) -> bool:
        for w in par.weyl_levi:
            for lam, m in self.mults.items():
                img = tuple(int(x) for x in mat_apply(w, lam))
                if self.mults.get(img, 0) != m:
                    return False
        return True


class CharSeries:
    """Truncated series in the completed character ring: coweight -> Q(q) coefficient.

    Support lies in the pos_U cone of the parabolic; the truncation height is
    measured by the pairing with 2rho_P.
    """

    def __init__(self, rd: RootDatum, par: ParabolicType, height: int, coeffs: dict):
        self.rd = rd
        self.par = par
        self.height = int(height)
        from .hecke import in_support_cone

        clean = {}
        for k, v in coeffs.items():
            v = as_ratfunc(v)
            if not v.is_zero():
                key = tuple(int(x) for x in k)
                if pair(par.two_rho_check_P, key) > self.height:
                    continue
                if not in_support_cone(rd, par, key):
                    raise CharError(f"support point {key} lies outside the support cone")
                clean[key] = v
        self.coeffs: dict[Vec, RatFunc] = clean

    @staticmethod
    def unit(rd, par, height) -> "CharSeries":
        return CharSeries(rd, par, height, {(0,) * rd.rank: ONE})

    def coeff(self, lam) -> RatFunc:
        return self.coeffs.get(tuple(int(x) for x in lam), ZERO)

    def __eq__(self, other):
        return (
            isinstance(other, CharSeries)
            and self.height == other.height
            and self.coeffs == other.coeffs
        )

    def __mul__(self, other: "CharSeries") -> "CharSeries":
        if self.par.indices != other.par.indices:
            raise CharError("mismatched parabolic types")
        h = min(self.height, other.height)
        two_rho_p = self.par.two_rho_check_P
        out: dict[Vec, RatFunc] = {}
        for a, ca in self.coeffs.items():
            ha = pair(two_rho_p, a)
            for b, cb in other.coeffs.items():
                if ha + pair(two_rho_p, b) > h:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                prev = out.get(key)
                out[key] = ca * cb if prev is None else prev + ca * cb
        return CharSeries(self.rd, self.par, h, out)

    def graded_component(self, theta_class) -> dict[Vec, RatFunc]:
        """Coefficients supported on the given class of the quotient grading lattice."""
        target = tuple(Fraction(x) for x in theta_class)
        return {
            k: v for k, v in self.coeffs.items() if tuple(self.par.project(k)) == target
        }

    def classes(self) -> list:
        return sorted({tuple(self.par.project(k)) for k in self.coeffs})

    def invert(self) -> "CharSeries":
        """Graded Neumann inversion; requires an invertible constant term."""
        zero = (0,) * self.rd.rank
        c0 = self.coeffs.get(zero)
        if c0 is None or c0.is_zero():
            raise CharError("series has zero constant term")
        two_rho_p = self.par.two_rho_check_P
        pos = {k: v for k, v in self.coeffs.items() if k != zero}
        support = _monoid_points(list(pos), self.height, lambda v: pair(two_rho_p, v))
        inv: dict[Vec, RatFunc] = {zero: ONE / c0}
        for lam in support:
            if lam == zero:
                continue
            acc = ZERO
            for mu, cmu in pos.items():
                rest = tuple(a - b for a, b in zip(lam, mu))
                prev = inv.get(rest)
                if prev is not None:
                    acc = acc + cmu * prev
            inv[lam] = -acc / c0
        return CharSeries(self.rd, self.par, self.height, inv)


def _monoid_points(generators, height_bound, height_fn) -> list:
    """All sums of the generators with height <= bound, sorted by (height, point)."""
    zero = tuple(0 for _ in generators[0]) if generators else ()
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                q = tuple(a + b for a, b in zip(p, g))
                if q not in seen and height_fn(q) <= height_bound:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return sorted(seen, key=lambda v: (height_fn(v), v))


def lambda_series(rd: RootDatum, par: ParabolicType, t, piece: GradedPiece, height: int) -> CharSeries:
    """Alternating exterior-power series of a graded piece: the product of (1 - t e^w) over its weights."""
    t = as_ratfunc(t)
    out = CharSeries.unit(rd, par, height)
    for w in piece.weights:
        factor = CharSeries(rd, par, height, {(0,) * rd.rank: ONE, w: -t})
        out = out * factor
    return out


def sym_series(rd: RootDatum, par: ParabolicType, t, piece: GradedPiece, height: int) -> CharSeries:
    """Symmetric-power series of a graded piece: the product of geometric series in t e^w."""
    t = as_ratfunc(t)
    two_rho_p = par.two_rho_check_P
    out = CharSeries.unit(rd, par, height)
    for w in piece.weights:
        hw = pair(two_rho_p, w)
        if hw <= 0:
            raise CharError(f"weight {w} is not strictly positive in the grading; series not summable")
        coeffs = {}
        n = 0
        tn = ONE
        while n * hw <= height:
            coeffs[tuple(n * x for x in w)] = tn
            tn = tn * t
            n += 1
        out = out * CharSeries(rd, par, height, coeffs)
    return out


# ---------------------------------------------------------------------------
# irreducible decomposition for the dual Levi (Freudenthal multiplicities)


def _levi_form(rd: RootDatum, par: ParabolicType):
    """A W_M-invariant symmetric form on the coweight lattice, positive on the Levi root span."""
    roots = sorted(par.roots_levi)

    def form(x, y) -> Fraction:
        return sum((Fraction(pair(r, x)) * Fraction(pair(r, y)) for r in roots), Fraction(0))

    return form


def irreducible_character(rd: RootDatum, par: ParabolicType, highest: Vec) -> dict[Vec, int]:
    """Weight multiplicities of the dual-Levi irreducible with the given dominant highest weight."""
    highest = tuple(int(x) for x in highest)
    if not par.is_levi_dominant(highest):
        raise CharError(f"{highest} is not dominant for the Levi")
    if not par.indices:
        return {highest: 1}
    form = _levi_form(rd, par)
    rho = tuple(Fraction(sum(col), 2) for col in zip(*par.pos_coroots_levi))
    simples = [rd.simple_coroots[j] for j in sorted(par.indices)]
    # candidate weights: lattice points below the highest weight whose dominant
    # conjugate is still majorized by it
    candidates = {highest}
    frontier = [highest]
    while frontier:
        new = []
        for lam in frontier:
            for s in simples:
                mu = tuple(a - b for a, b in zip(lam, s))
                if mu in candidates:
                    continue
                dom = tuple(rd.dominant_representative(mu, par.indices))
                if dominance_leq(rd, par, highest, dom):
                    candidates.add(mu)
                    new.append(mu)
        frontier = new
    lamrho = tuple(Fraction(a) + b for a, b in zip(highest, rho))
    norm_top = form(lamrho, lamrho)
    order = sorted(candidates, key=lambda v: (-pair(par.two_rho_check_levi, v), v))
    mults: dict[Vec, int] = {}
    for mu in order:
        if mu == highest:
            mults[mu] = 1
            continue
        murho = tuple(Fraction(a) + b for a, b in zip(mu, rho))
        den = norm_top - form(murho, murho)
        acc = Fraction(0)
        for alpha in par.pos_coroots_levi:
            k = 1
            while True:
                shifted = tuple(a + k * b for a, b in zip(mu, alpha))
                m = mults.get(shifted)
                if m is None and shifted not in candidates:
                    break
                if m:
                    acc += 2 * m * form(shifted, alpha)
                k += 1
        if den == 0:
            mults[mu] = 0
            continue
        val = acc / den
        if val.denominator != 1 or val < 0:
            raise CharError(f"Freudenthal produced a non-integer multiplicity at {mu}")
        if val:
            mults[mu] = int(val)
    return {k: v for k, v in mults.items() if v}


def decompose_into_irreducibles(rd: RootDatum, par: ParabolicType, f) -> tuple[list[tuple[Vec, int]], bool]:
    """Greedy highest-weight stripping of a W_M-invariant weight function.

    Returns (components, virtual): components reconstruct the input exactly; the
    flag marks signed multiplicities (virtual characters).
    """
    if isinstance(f, WeightFunction):
        work = dict(f.mults)
    else:
        work = {tuple(int(x) for x in k): int(v) for k, v in f.items() if v}
    if not WeightFunction(work).is_levi_invariant(rd, par):
        raise CharError("weight function is not W_M-invariant")
    out: list[tuple[Vec, int]] = []
    virtual = False
    guard = 0
    while work:
        guard += 1
        if guard > 10000:
            raise CharError("decomposition did not terminate")
        maxima = [
            lam
            for lam in work
            if not any(
                other != lam and dominance_leq(rd, par, other, lam) for other in work
            )
        ]
        dom_maxima = [lam for lam in maxima if par.is_levi_dominant(lam)]
        if not dom_maxima:
            raise CharError("no dominant maximal weight (input not W_M-invariant?)")
        lam = max(dom_maxima)
        mult = work[lam]
        if mult < 0:
            virtual = True
        char = irreducible_character(rd, par, lam)
        for mu, m in char.items():
            new = work.get(mu, 0) - mult * m
            if new:
                work[mu] = new
            else:
                work.pop(mu, None)
        out.append((lam, mult))
    out.sort(key=lambda item: (-pair(par.two_rho_check_levi, item[0]), item[0]))
    return out, virtual
