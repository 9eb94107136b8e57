"""K-invariant intertwining operator, its inverse, and the asymptotics value, acting on windowed functions on the coweight lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cones
from .cones import SupportShape
from .hecke import GradedSeries, TruncationError, gk_mu
from .qfield import RatFunc, ZERO, as_ratfunc, q_pow
from .rootdata import ParabolicType, RootDatum, Vec, pair


class IntertwineError(ValueError):
    pass


def kernel_scale(rd: RootDatum, par: ParabolicType) -> int:
    """1 if the half-sum pairing is integral on the support cone, else 2 (exponents doubled, q = u^2)."""
    return 1 if all(pair(par.two_rho_check_P, a) % 2 == 0 for a in par.pos_coroots_unipotent) else 2


def lift_scalar(c: RatFunc, scale: int) -> RatFunc:
    """Interpret a Q(q) scalar in the working field (q -> u^scale)."""
    return c if scale == 1 else c.double_exponents()


@dataclass(frozen=True)
class ModulusCharacter:
    """The modulus character lam -> q^{-<2rho_P, lam>}, multiplicative in lam."""

    rd: RootDatum
    par: ParabolicType
    scale: int = 1

    def __call__(self, lam) -> RatFunc:
        return q_pow(-self.scale * pair(self.par.two_rho_check_P, lam))

    def inverse(self, lam) -> RatFunc:
        return q_pow(self.scale * pair(self.par.two_rho_check_P, lam))


class SphericalFunction:
    """Finitely supported function on lattice coweights inside a declared support window."""

    def __init__(self, rd: RootDatum, par: ParabolicType, values: dict, window: SupportShape, check_window: bool = True):
        self.rd = rd
        self.par = par
        self.values: dict[Vec, RatFunc] = {}
        for k, v in values.items():
            v = as_ratfunc(v)
            if not v.is_zero():
                self.values[tuple(int(x) for x in k)] = v
        self.window = window
        if check_window:
            if not cones.bounded_above(rd, window):
                raise IntertwineError("window is not of bounded-above type")
            for lam in self.values:
                if not window.contains(rd, lam):
                    raise IntertwineError(f"support point {lam} lies outside the declared window")

    def value(self, lam) -> RatFunc:
        return self.values.get(tuple(int(x) for x in lam), ZERO)

    def __eq__(self, other):
        return isinstance(other, SphericalFunction) and self.values == other.values

    def is_zero(self) -> bool:
        return not self.values

    def max_height(self):
        two_rho_p = self.par.two_rho_check_P
        return max((pair(two_rho_p, lam) for lam in self.values), default=0)


def _indicator_kernel(series: GradedSeries, scale: int) -> dict[Vec, RatFunc]:
    """Indicator-basis coefficients of the series, in the working field."""
    out = {}
    for lam, c in series.coeffs.items():
        e = series.rho_p_exponent(lam)
        exp = scale * e
        if exp.denominator != 1:
            raise IntertwineError(
                "kernel needs half-integral powers of q; use kernel_scale to double exponents"
            )
        out[lam] = lift_scalar(c, scale) * q_pow(int(exp))
    return out


def _apply_kernel(rd, par, series, phi, out_points, twist):
    """Twisted shift convolution out(lam) = twist(lam, theta) sum kernel(theta) phi(lam + theta)."""
    if series.par.indices != par.indices:
        raise IntertwineError("series parabolic does not match")
    scale = kernel_scale(rd, par)
    kernel = _indicator_kernel(series, scale)
    two_rho_p = par.two_rho_check_P
    max_h = phi.max_height()
    if out_points is None:
        # default to the certified part of the potential support; requested
        # points outside the certificate raise instead of truncating silently
        potential = {tuple(a - b for a, b in zip(p, th)) for p in phi.values for th in kernel}
        out_points = sorted(lam for lam in potential if max_h - pair(two_rho_p, lam) <= series.height)
    else:
        bad = [lam for lam in out_points if max_h - pair(two_rho_p, lam) > series.height]
        if bad:
            raise TruncationError(
                f"series height {series.height} cannot certify outputs at {bad[:3]} "
                f"(needs height {max(max_h - pair(two_rho_p, lam) for lam in bad)})"
            )
    out_set = set(out_points)
    out: dict[Vec, RatFunc] = {}
    for theta, k in kernel.items():
        for p, v in phi.values.items():
            lam = tuple(a - b for a, b in zip(p, theta))
            if lam in out_set:
                term = twist(scale, lam, theta) * k * v
                prev = out.get(lam)
                out[lam] = term if prev is None else prev + term
    out = {k2: v2 for k2, v2 in out.items() if not v2.is_zero()}
    window = SupportShape.make(
        [tuple(Fraction(x) for x in b) for b in phi.window.base], cones.neg_pos_U(par.indices)
    )
    return SphericalFunction(rd, par, out, window, check_window=False)


def apply_R_K(rd: RootDatum, par: ParabolicType, series: GradedSeries, phi: SphericalFunction, out_points=None) -> SphericalFunction:
    """The K-invariant intertwining operator: modulus-inverse prefactor times shift convolution with the series."""
    two_rho_p = par.two_rho_check_P

    def twist(scale, lam, theta):
        return q_pow(scale * pair(two_rho_p, lam))

    return _apply_kernel(rd, par, series, phi, out_points, twist)


def apply_R_inverse_K(rd: RootDatum, par: ParabolicType, series: GradedSeries, phi: SphericalFunction, out_points=None) -> SphericalFunction:
    """The inverse operator: modulus evaluated at the input point inside the sum, kernel the inverse series."""
    two_rho_p = par.two_rho_check_P

    def twist(scale, lam, theta):
        return q_pow(-scale * (pair(two_rho_p, lam) + pair(two_rho_p, theta)))

    return _apply_kernel(rd, par, series, phi, out_points, twist)


def asymp_delta_K(rd: RootDatum, par: ParabolicType, lam, height: int | None = None) -> RatFunc:
    """Asymptotics of the basic spherical vector: the indicator-basis value of the inverse series at lam."""
    lam = tuple(int(x) for x in lam)
    h = pair(par.two_rho_check_P, lam)
    if height is None:
        height = max(h, 0)
    if h > height:
        raise IntertwineError(f"{lam} lies outside the computed window (height {height})")
    if not cones.cone_member(rd, cones.pos_U(par.indices), lam):
        return ZERO
    nu_s = gk_mu(rd, par, height).invert()
    scale = kernel_scale(rd, par)
    return _indicator_kernel(nu_s, scale).get(lam, ZERO)
