"""Completed Hecke series on the unipotent support cone: the Gindikin-Karpelevich measure, its convolution inverse, and the character-ring reformulations."""

from __future__ import annotations

from fractions import Fraction

from .charring import CharSeries, _monoid_points, lambda_series, sym_series, u_P_graded_pieces
from .qfield import ONE, RatFunc, ZERO, as_ratfunc, q_pow
from .rootdata import ParabolicType, RootDatum, Vec, mat_apply, pair


class HeckeError(ValueError):
    pass


class TruncationError(HeckeError):
    pass


_CONE_MEMO: dict = {}


def in_support_cone(rd, par, lam) -> bool:
    """Cached membership of a lattice point in the parabolic's unipotent support cone."""
    key = (rd.name, tuple(sorted(par.indices)), tuple(lam))
    hit = _CONE_MEMO.get(key)
    if hit is None:
        from . import cones

        hit = _CONE_MEMO[key] = cones.in_cone(
            [cones.fvec(a) for a in par.pos_coroots_unipotent], cones.fvec(lam)
        )
    return hit


E_BASIS = "e"
INDICATOR_BASIS = "indicator"


class GradedSeries:
    """Truncated series supported on lattice points of the unipotent cone.

    Coefficients live in Q(q); the truncation height is the pairing with 2rho_P.
    The multiplicative e-basis is primary; the indicator basis differs by the
    exact scalar q^{<rho_P, lam>} per lattice point.
    """

    def __init__(self, rd: RootDatum, par: ParabolicType, height: int, coeffs: dict, basis: str = E_BASIS):
        if basis not in (E_BASIS, INDICATOR_BASIS):
            raise HeckeError(f"unknown basis {basis!r}")
        self.rd = rd
        self.par = par
        self.height = int(height)
        self.basis = basis
        clean: dict[Vec, RatFunc] = {}
        for k, v in coeffs.items():
            v = as_ratfunc(v)
            if v.is_zero():
                continue
            key = tuple(int(x) for x in k)
            h = pair(par.two_rho_check_P, key)
            if h > self.height:
                continue
            if not in_support_cone(rd, par, key):
                raise HeckeError(f"support point {key} lies outside the support cone")
            clean[key] = v
        self.coeffs = clean

    # -- basics ---------------------------------------------------------
    @staticmethod
    def unit(rd, par, height, basis: str = E_BASIS) -> "GradedSeries":
        return GradedSeries(rd, par, height, {(0,) * rd.rank: ONE}, basis)

    def coeff(self, lam) -> RatFunc:
        return self.coeffs.get(tuple(int(x) for x in lam), ZERO)

    def constant_term(self) -> RatFunc:
        return self.coeff((0,) * self.rd.rank)

    def __eq__(self, other):
        return (
            isinstance(other, GradedSeries)
            and self.basis == other.basis
            and self.height == other.height
            and self.coeffs == other.coeffs
        )

    def support(self) -> list[Vec]:
        return sorted(self.coeffs, key=lambda v: (pair(self.par.two_rho_check_P, v), v))

    def is_levi_invariant(self) -> bool:
        """Coefficient map is constant along W_M-orbits on the lattice."""
        for w in self.par.weyl_levi:
            for lam, c in self.coeffs.items():
                img = tuple(int(x) for x in mat_apply(w, lam))
                if self.coeffs.get(img, ZERO) != c:
                    return False
        return True

    # -- basis conversion --------------------------------------------------
    def rho_p_exponent(self, lam) -> Fraction:
        return Fraction(pair(self.par.two_rho_check_P, lam), 2)

    def to_basis(self, basis: str) -> "GradedSeries":
        if basis == self.basis:
            return self
        sign = 1 if basis == INDICATOR_BASIS else -1
        out = {}
        for lam, c in self.coeffs.items():
            e = self.rho_p_exponent(lam)
            if e.denominator != 1:
                raise HeckeError(
                    f"basis conversion at {lam} needs q^{e}: half-integral powers of q do not "
                    "lie in Q(q); keep the e-basis or work with doubled exponents"
                )
            out[lam] = c * q_pow(sign * int(e))
        return GradedSeries(self.rd, self.par, self.height, out, basis)

    # -- algebra ----------------------------------------------------------
    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        return convolve(self, other)

    def invert(self) -> "GradedSeries":
        c0 = self.constant_term()
        if c0.is_zero():
            raise HeckeError("series has zero constant term; not a unit")
        zero = (0,) * self.rd.rank
        two_rho_p = self.par.two_rho_check_P
        pos = {k: v for k, v in self.coeffs.items() if k != zero}
        points = _monoid_points(list(pos) or [zero], self.height, lambda v: pair(two_rho_p, v))
        inv = {zero: ONE / c0}
        for lam in points:
            if lam == zero:
                continue
            acc = ZERO
            for mu, cmu in pos.items():
                rest = tuple(a - b for a, b in zip(lam, mu))
                prev = inv.get(rest)
                if prev is not None:
                    acc = acc + cmu * prev
            inv[lam] = -acc / c0
        return GradedSeries(self.rd, self.par, self.height, inv, self.basis)


def convolve(s1: GradedSeries, s2: GradedSeries) -> GradedSeries:
    """Cone-graded Cauchy product; truncation height is the minimum of the two."""
    if s1.par.indices != s2.par.indices or s1.rd is not s2.rd and s1.rd.config() != s2.rd.config():
        raise HeckeError("mismatched parabolic types")
    if s1.basis != s2.basis:
        raise HeckeError("mismatched bases; convert first")
    h = min(s1.height, s2.height)
    two_rho_p = s1.par.two_rho_check_P
    out: dict[Vec, RatFunc] = {}
    for a, ca in s1.coeffs.items():
        ha = pair(two_rho_p, a)
        if ha > h:
            continue
        for b, cb in s2.coeffs.items():
            if ha + pair(two_rho_p, b) > h:
                continue
            key = tuple(x + y for x, y in zip(a, b))
            prev = out.get(key)
            out[key] = ca * cb if prev is None else prev + ca * cb
    return GradedSeries(s1.rd, s1.par, h, out, s1.basis)


def gk_mu(rd: RootDatum, par: ParabolicType, height: int) -> GradedSeries:
    """The Gindikin-Karpelevich series: product over non-Levi positive coroots of (1 - q^{-1} e^a)/(1 - e^a)."""
    zero = (0,) * rd.rank
    out = GradedSeries.unit(rd, par, height)
    one_minus_qinv = ONE - q_pow(-1)
    for a in par.pos_coroots_unipotent:
        ha = pair(par.two_rho_check_P, a)
        factor = {zero: ONE}
        n = 1
        while n * ha <= height:
            factor[tuple(n * int(x) for x in a)] = one_minus_qinv
            n += 1
        out = convolve(out, GradedSeries(rd, par, height, factor))
    if not out.constant_term().is_one():
        raise HeckeError("GK series must have constant term 1")
    if not out.is_levi_invariant():
        raise HeckeError("GK series must be W_M-invariant")
    return out


def invert(s: GradedSeries) -> GradedSeries:
    return s.invert()


def nu(rd: RootDatum, par: ParabolicType, height: int) -> GradedSeries:
    """Convolution inverse of the Gindikin-Karpelevich series; constant term is asserted to be 1."""
    out = gk_mu(rd, par, height).invert()
    if not out.constant_term().is_one():
        raise HeckeError("inverse series must have constant term 1")
    return out


# ---------------------------------------------------------------------------
# character-ring bridge


def satake_character_bridge(rd: RootDatum, par: ParabolicType, s: GradedSeries, height: int | None = None) -> CharSeries:
    """Reinterpret a W_M-invariant e-basis series as an element of the completed character ring.

    The character-side coefficient at a lattice point is the indicator-basis
    coefficient there; products of series correspond to products of characters.
    """
    if not s.is_levi_invariant():
        raise HeckeError("series is not W_M-invariant")
    h = s.height if height is None else min(height, s.height)
    ind = s.to_basis(INDICATOR_BASIS) if s.basis == E_BASIS else s
    return CharSeries(rd, par, h, dict(ind.coeffs))


def _doubled_series_coeffs(s: GradedSeries) -> dict:
    """Indicator coefficients with q replaced by q^2 (so q^{1/2}-twists become integral)."""
    out = {}
    for lam, c in s.coeffs.items():
        e = s.rho_p_exponent(lam)
        out[lam] = c.double_exponents() * q_pow(int(2 * e))
    return out


def _lambda_product_side(rd, par, height: int, swap: bool, scale: int) -> CharSeries:
    """Product over graded pieces of Lambda(q^{a-1}, piece)/Lambda(q^a, piece) (or its reciprocal)."""
    out = CharSeries.unit(rd, par, height)
    for piece in u_P_graded_pieces(rd, par):
        e_hi = scale * piece.level
        e_lo = scale * (piece.level - 1)
        if e_hi.denominator != 1 or e_lo.denominator != 1:
            raise HeckeError("piece level is not integral at this scale")
        num_t, den_t = q_pow(int(e_lo)), q_pow(int(e_hi))
        if swap:
            num_t, den_t = den_t, num_t
        num = lambda_series(rd, par, num_t, piece, height)
        den = lambda_series(rd, par, den_t, piece, height)
        out = out * (num * den.invert())
    return out


def verify_series_reformulation(rd: RootDatum, par: ParabolicType, height: int) -> bool:
    """Check both character-ring reformulations of the GK series and its inverse.

    Levels with half-integral values are handled by doubling all exponents
    (q -> q^2), which is injective on Q(q).
    """
    pieces = u_P_graded_pieces(rd, par)
    scale = 1 if all(p.level.denominator == 1 for p in pieces) else 2
    mu_s = gk_mu(rd, par, height)
    nu_s = mu_s.invert()
    if scale == 1:
        smu = satake_character_bridge(rd, par, mu_s)
        snu = satake_character_bridge(rd, par, nu_s)
    else:
        smu = CharSeries(rd, par, height, _doubled_series_coeffs(mu_s))
        snu = CharSeries(rd, par, height, _doubled_series_coeffs(nu_s))
    lhs_mu = _lambda_product_side(rd, par, height, swap=False, scale=scale)
    lhs_nu = _lambda_product_side(rd, par, height, swap=True, scale=scale)
    return smu == lhs_mu and snu == lhs_nu


def verify_smu_snu_unit(rd: RootDatum, par: ParabolicType, height: int) -> bool:
    """The bridge is multiplicative: S(mu) S(nu) = 1 in the completed character ring."""
    mu_s = gk_mu(rd, par, height)
    nu_s = mu_s.invert()
    try:
        smu = satake_character_bridge(rd, par, mu_s)
        snu = satake_character_bridge(rd, par, nu_s)
    except HeckeError:
        smu = CharSeries(rd, par, height, _doubled_series_coeffs(mu_s))
        snu = CharSeries(rd, par, height, _doubled_series_coeffs(nu_s))
    return smu * snu == CharSeries.unit(rd, par, height)


def verify_alternating_sym_expansion(rd: RootDatum, par: ParabolicType, height: int) -> bool:
    """Termwise check that Lambda(q^a)/Lambda(q^{a-1}) equals the alternating-sym product, per graded piece.

    The left side inverts the denominator by graded Neumann inversion; the right
    side expands the symmetric series independently from its generating product.
    """
    pieces = u_P_graded_pieces(rd, par)
    scale = 1 if all(p.level.denominator == 1 for p in pieces) else 2
    for piece in pieces:
        e_hi = int(scale * piece.level)
        e_lo = int(scale * (piece.level - 1))
        lam_hi = lambda_series(rd, par, q_pow(e_hi), piece, height)
        lam_lo = lambda_series(rd, par, q_pow(e_lo), piece, height)
        lhs = lam_hi * lam_lo.invert()
        rhs = lam_hi * sym_series(rd, par, q_pow(e_lo), piece, height)
        if lhs != rhs:
            return False
    return True
