"""Fully computable global model for rank one over the projective line: bundle counts, Eisenstein/constant-term operators, the degree-shift intertwiner, and the operators L, L^{-1}, and the bilinear form B.

Every formula is parametric in qv, which may be the formal variable of Q(q) or an
exact rational number. All normalizations follow mes(K) = 1 and
mes(U(A)/U(F)) = 1; on the projective line this gives mes(O_A) = q, which is the
source of the extra factor of q in the modulus twists below (see docs/conventions.md).
"""

from __future__ import annotations

from fractions import Fraction

from .qfield import Q

DEFAULT_PROBE = 8


class GlobalError(ValueError):
    pass


class CertificationError(GlobalError):
    pass


def _zero_like(qv):
    return qv - qv


def _one_like(qv):
    return qv**0


# ---------------------------------------------------------------------------
# point counts


def aut_count(n: int, qv):
    """Order of the automorphism group of the rank-two trivial-determinant bundle O(n) + O(-n)."""
    if n == 0:
        return qv * (qv - 1) * (qv + 1)
    return (qv - 1) * qv ** (2 * n + 1)


def aut_count_bruteforce(n: int, q: int) -> int:
    """Direct enumeration of determinant-one automorphisms over F_q (oracle for aut_count)."""
    if n == 0:
        return sum(
            1
            for a in range(q)
            for b in range(q)
            for c in range(q)
            for d in range(q)
            if (a * d - b * c) % q == 1
        )
    # upper-triangular with scalar blocks a, a^{-1} and an arbitrary section of O(2n)
    count = 0
    for a in range(1, q):
        for d in range(1, q):
            if (a * d) % q == 1:
                count += q ** (2 * n + 1)
    return count


def subbundle_count(n: int, d: int, qv):
    """Number of degree-d line subbundles of O(n) + O(-n) (closed form; see the brute-force oracle)."""
    zero = _zero_like(qv)
    if d > n:
        return zero
    if n == 0:
        if d == 0:
            return qv + 1
        return (qv**2 - 1) * qv ** (-2 * d - 1)
    if d == n:
        return _one_like(qv)
    if -n < d < n:
        return zero
    if d == -n:
        return qv ** (2 * n + 1)
    return (qv**2 - 1) * qv ** (-2 * d - 1)


def _poly_gcd_mod(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = [x % q for x in a], [x % q for x in b]

    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = strip(a), strip(b)
    while b:
        inv = pow(b[-1], q - 2, q) if q > 2 else b[-1]
        while len(a) >= len(b):
            c = (a[-1] * inv) % q
            if c:
                for i in range(len(b)):
                    a[len(a) - len(b) + i] = (a[len(a) - len(b) + i] - c * b[i]) % q
            a.pop()
            a = strip(a)
            if not a:
                break
        a, b = b, strip(a)
    return a


def subbundle_count_bruteforce(n: int, d: int, q: int) -> Fraction:
    """Count pairs of homogeneous sections with no common zero on the projective line, modulo scalars."""
    from itertools import product

    deg_f, deg_g = n - d, -n - d
    fs = (
        [list(c) for c in product(range(q), repeat=deg_f + 1)] if deg_f >= 0 else [[0] * 0]
    )
    gs = (
        [list(c) for c in product(range(q), repeat=deg_g + 1)] if deg_g >= 0 else [[0] * 0]
    )
    count = 0
    for f in fs:
        for g in gs:
            fz = all(x == 0 for x in f)
            gz = all(x == 0 for x in g)
            if fz and gz:
                continue
            if fz:
                # f vanishes everywhere; no common zero iff g never vanishes, i.e. deg 0
                if deg_g == 0:
                    count += 1
                continue
            if gz:
                if deg_f == 0:
                    count += 1
                continue
            # common zero at infinity: both leading coefficients vanish
            if f[-1] % q == 0 and g[-1] % q == 0:
                continue
            if len(_poly_gcd_mod(f, g, q)) > 1:
                continue
            count += 1
    return Fraction(count, q - 1)


# ---------------------------------------------------------------------------
# zeta-side series oracle


def count_closed_points(m: int, q: int | None = None, qv=None):
    """Number of closed points of degree m on the projective line (necklace count), as a value in qv."""
    if qv is None:
        qv = Q if q is None else Fraction(q)
    if m == 1:
        return qv + 1

    def mobius(k):
        out, kk, p = 1, k, 2
        while p * p <= kk:
            if kk % p == 0:
                kk //= p
                if kk % p == 0:
                    return 0
                out = -out
            p += 1
        if kk > 1:
            out = -out
        return out

    acc = _zero_like(qv)
    k = 1
    while k <= m:
        if m % k == 0:
            acc = acc + mobius(k) * qv ** (m // k)
        k += 1
    return acc * Fraction(1, m)


def _series_mul(a: list, b: list, order: int) -> list:
    out = [_zero_like(a[0]) for _ in range(order + 1)]
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _geom_series(ratio_power: int, scale, order: int, qv) -> list:
    """Series of 1/(1 - scale * t^ratio_power) to the given order."""
    out = [_zero_like(qv) for _ in range(order + 1)]
    out[0] = _one_like(qv)
    k = ratio_power
    acc = scale
    while k <= order:
        out[k] = acc
        acc = acc * scale
        k += ratio_power
    return out


def gk_degree_series_euler(order: int, qv, inverse: bool = False) -> list:
    """Degree-m coefficients of the product of local factors over closed points, by necklace counts.

    The forward series multiplies (1 - t^deg)/(1 - (q t)^deg) per closed point;
    `inverse` swaps numerator and denominator. This is the independent oracle for
    the closed forms in gk_degree_series.
    """
    out = [_one_like(qv)] + [_zero_like(qv) for _ in range(order)]
    for m in range(1, order + 1):
        a_m = count_closed_points(m, qv=qv)
        num = [_one_like(qv)] + [_zero_like(qv)] * order
        num[m] = -(qv**m) if inverse else -_one_like(qv)
        den = _geom_series(m, (qv**m if not inverse else _one_like(qv)), order, qv)
        factor = _series_mul(num, den, order)
        # raise the local factor to the number of points of this degree
        power = [_one_like(qv)] + [_zero_like(qv)] * order
        k = a_m
        base = factor
        # a_m is a polynomial value in qv; exponentiation only makes sense for numeric counts
        if isinstance(k, Fraction):
            steps = int(k)
        elif isinstance(k, int):
            steps = k
        else:
            raise GlobalError("euler expansion needs a numeric point count; pass a numeric qv")
        for _ in range(steps):
            power = _series_mul(power, base, order)
        out = _series_mul(out, power, order)
    return out


def gk_degree_series(order: int, qv, inverse: bool = False) -> list:
    """Closed-form degree series: (1 - t)/(1 - q^2 t), or its reciprocal when `inverse`.

    Forward coefficients: 1, then q^{2m} - q^{2m-2}; inverse: 1, then 1 - q^2.
    """
    out = [_one_like(qv)]
    for m in range(1, order + 1):
        out.append((1 - qv**2) if inverse else qv ** (2 * m) - qv ** (2 * m - 2))
    return out


def mu_hat(m: int, qv):
    """Global forward kernel coefficient: 1 at m = 0, q^{2m} - q^{2m-2} for m >= 1."""
    return _one_like(qv) if m == 0 else qv ** (2 * m) - qv ** (2 * m - 2)


def nu_hat(m: int, qv):
    """Global inverse kernel coefficient: 1 at m = 0, 1 - q^2 for m >= 1."""
    return _one_like(qv) if m == 0 else 1 - qv**2


# ---------------------------------------------------------------------------
# groupoid functions


class TFunction:
    """Function on the degree axis of the torus side, memoized, with certified support bounds.

    `upper` (resp. `lower`) certifies vanishing strictly above (below) the bound;
    None leaves the side unbounded.
    """

    def __init__(self, fn, upper=None, lower=None, qv=None):
        self._fn = fn
        self._memo: dict[int, object] = {}
        self.upper = upper
        self.lower = lower
        self.qv = qv

    @staticmethod
    def from_dict(values: dict, qv) -> "TFunction":
        vals = {int(k): v for k, v in values.items() if v != 0}
        if not vals:
            return TFunction(lambda d: _zero_like(qv), upper=0, lower=0, qv=qv)
        return TFunction(
            lambda d: vals.get(d, _zero_like(qv)),
            upper=max(vals),
            lower=min(vals),
            qv=qv,
        )

    def value(self, d: int):
        d = int(d)
        if self.upper is not None and d > self.upper:
            return _zero_like(self.qv)
        if self.lower is not None and d < self.lower:
            return _zero_like(self.qv)
        if d not in self._memo:
            self._memo[d] = self._fn(d)
        return self._memo[d]


class GFunction:
    """Function on bundle classes (nonnegative degrees), memoized, with an optional certified upper bound."""

    def __init__(self, fn, upper=None, qv=None):
        self._fn = fn
        self._memo: dict[int, object] = {}
        self.upper = upper
        self.qv = qv

    @staticmethod
    def from_dict(values: dict, qv) -> "GFunction":
        vals = {int(k): v for k, v in values.items() if v != 0}
        if any(k < 0 for k in vals):
            raise GlobalError("bundle classes are indexed by nonnegative integers")
        return GFunction(
            lambda n: vals.get(n, _zero_like(qv)), upper=max(vals, default=0), qv=qv
        )

    def value(self, n: int):
        n = int(n)
        if n < 0:
            raise GlobalError("bundle classes are indexed by nonnegative integers")
        if self.upper is not None and n > self.upper:
            return _zero_like(self.qv)
        if n not in self._memo:
            self._memo[n] = self._fn(n)
        return self._memo[n]


# ---------------------------------------------------------------------------
# operators


def eis_B(phi: TFunction, qv) -> GFunction:
    """Eisenstein sum over line subbundles: (Eis phi)(n) = sum_d sigma(n, d) phi(d)."""
    if phi.lower is None:
        raise GlobalError("Eisenstein sum needs a support bound below (plus-type window)")

    def fn(n):
        acc = _zero_like(qv)
        for d in range(phi.lower, n + 1):
            s = subbundle_count(n, d, qv)
            if s != 0:
                acc = acc + s * phi.value(d)
        return acc

    upper = None
    if phi.upper is not None:
        upper = max(abs(phi.upper), abs(phi.lower))
    return GFunction(fn, upper=upper, qv=qv)


def eis_B_minus(psi: TFunction, qv) -> GFunction:
    """Eisenstein operator for the opposite parabolic: degree negation then eis_B."""
    if psi.upper is None:
        raise GlobalError("opposite Eisenstein sum needs a support bound above")
    flipped = TFunction(
        lambda d: psi.value(-d),
        upper=(-psi.lower if psi.lower is not None else None),
        lower=-psi.upper,
        qv=qv,
    )
    return eis_B(flipped, qv)


def ct_kernel(n: int, d: int, qv):
    """Constant-term kernel c(n, d): the measure of unipotent classes gluing O(d) into O(n) + O(-n).

    Equals the adjoint kernel (q-1) q^{2d+1} sigma(n, d) / aut(n) for the
    groupoid pairings; for d >= 0 it collapses to the identity matrix.
    """
    zero = _zero_like(qv)
    if d >= 0:
        return _one_like(qv) if n == d else zero
    if n == -d:
        return qv ** (2 * d + 1)
    if n == 0:
        return (qv - 1) / qv
    if 1 <= n <= -d - 1:
        return (qv**2 - 1) * qv ** (-2 * n - 1)
    return zero


def ct_B(f: GFunction, qv) -> TFunction:
    """Constant term: integrate over unipotent classes; column-finite in the degree."""

    def fn(d):
        if d >= 0:
            return f.value(d) if f.upper is None or d <= f.upper else _zero_like(qv)
        acc = ct_kernel(0, d, qv) * f.value(0)
        for n in range(1, -d + 1):
            k = ct_kernel(n, d, qv)
            if k != 0:
                acc = acc + k * f.value(n)
        return acc

    return TFunction(fn, upper=f.upper, lower=None, qv=qv)


def ct_B_minus(f: GFunction, qv) -> TFunction:
    """Constant term along the opposite parabolic, stored in its own degree coordinate."""
    ct = ct_B(f, qv)
    return TFunction(
        lambda d: ct.value(-d),
        upper=None,
        lower=(-f.upper if f.upper is not None else None),
        qv=qv,
    )


def global_R(psi: TFunction, qv) -> TFunction:
    """Forward intertwiner: modulus-inverse prefactor times upward convolution with the forward kernel.

    R(psi)(d) = q^{2d+1} sum_m mu_hat(m) psi(d + m), on windows bounded above.
    """
    if psi.upper is None:
        raise GlobalError("forward intertwiner needs a support bound above")

    def fn(d):
        acc = _zero_like(qv)
        for m in range(0, psi.upper - d + 1):
            v = psi.value(d + m)
            if v != 0:
                acc = acc + mu_hat(m, qv) * v
        return acc * qv ** (2 * d + 1)

    return TFunction(fn, upper=psi.upper, lower=None, qv=qv)


def global_R_inverse(phi: TFunction, qv) -> TFunction:
    """Inverse intertwiner: modulus at the input point inside the sum, inverse kernel.

    R^{-1}(phi)(d) = sum_m q^{-2(d+m)-1} nu_hat(m) phi(d + m), on windows bounded above.
    """
    if phi.upper is None:
        raise GlobalError("inverse intertwiner needs a support bound above")

    def fn(d):
        acc = _zero_like(qv)
        for m in range(0, phi.upper - d + 1):
            v = phi.value(d + m)
            if v != 0:
                acc = acc + qv ** (-2 * (d + m) - 1) * nu_hat(m, qv) * v
        return acc

    return TFunction(fn, upper=phi.upper, lower=None, qv=qv)


# ---------------------------------------------------------------------------
# pairings


def naive_pairing(f1: GFunction, f2: GFunction, qv):
    """Groupoid-weighted sum over bundle classes."""
    if f1.upper is None and f2.upper is None:
        raise GlobalError("naive pairing needs one factor of certified finite support")
    upper = min(x for x in (f1.upper, f2.upper) if x is not None)
    acc = _zero_like(qv)
    for n in range(0, upper + 1):
        acc = acc + f1.value(n) * f2.value(n) / aut_count(n, qv)
    return acc


def t_weight(d: int, qv):
    """Measure of the degree-d class on the torus side of the standard parabolic."""
    return qv ** (-2 * d - 1) / (qv - 1)


def t_weight_minus(d: int, qv):
    return qv ** (2 * d - 1) / (qv - 1)


def t_pairing(phi1: TFunction, phi2: TFunction, qv, minus: bool = False):
    """Weighted pairing on the torus side; finite when the windows overlap finitely."""
    uppers = [x for x in (phi1.upper, phi2.upper) if x is not None]
    lowers = [x for x in (phi1.lower, phi2.lower) if x is not None]
    if not uppers or not lowers:
        raise GlobalError("pairing window is not certified finite")
    lo, hi = max(lowers), min(uppers)
    acc = _zero_like(qv)
    for d in range(lo, hi + 1):
        w = t_weight_minus(d, qv) if minus else t_weight(d, qv)
        acc = acc + w * phi1.value(d) * phi2.value(d)
    return acc


# ---------------------------------------------------------------------------
# the operator L, its inverse, and the bilinear form


def op_L(f: GFunction, qv) -> GFunction:
    """L = (identity term) - Eis_{B^-} R^{-1} CT_B on finitely supported bundle functions.

    The output carries the certified constant term -psi(-d) (psi the inverse
    intertwiner of the constant term), which is the pseudo-compact support
    certificate: it vanishes below -psi.upper.
    """
    if f.upper is None:
        raise GlobalError("L needs finitely supported input")
    ct = ct_B(f, qv)
    psi = global_R_inverse(ct, qv)
    eis = eis_B_minus(psi, qv)

    def fn(n):
        return f.value(n) - eis.value(n)

    out = GFunction(fn, upper=None, qv=qv)
    out.psc_ct = TFunction(
        lambda d: -psi.value(-d), upper=None, lower=-psi.upper, qv=qv
    )
    return out


def op_L_inverse(g: GFunction, qv, probe: int = DEFAULT_PROBE) -> GFunction:
    """L^{-1} = (identity term) - Eis_B CT_B on certified pseudo-compactly supported functions.

    The input must carry a pseudo-compactness certificate (a lower bound for the
    support of its constant term); the certificate is verified against the
    honestly computed constant term on a probe window below the bound.
    """
    cert = getattr(g, "psc_ct", None)
    if cert is None or cert.lower is None:
        raise CertificationError("input carries no pseudo-compact support certificate")
    ct = ct_B(g, qv)
    for d in range(cert.lower - probe, cert.lower):
        if ct.value(d) != 0:
            raise CertificationError(f"constant term does not vanish at {d} despite the certificate")
    bounded_ct = TFunction(ct.value, upper=None, lower=cert.lower, qv=qv)
    eis = eis_B(bounded_ct, qv)

    def fn(n):
        return g.value(n) - eis.value(n)

    return GFunction(fn, upper=None, qv=qv)


def form_B(f1: GFunction, f2: GFunction, qv):
    """The bilinear form: the naive pairing minus the inverse-intertwined constant-term pairing."""
    if f1.upper is None or f2.upper is None:
        raise GlobalError("the form needs finitely supported inputs")
    psi = global_R_inverse(ct_B(f1, qv), qv)
    ctm = ct_B_minus(f2, qv)
    return naive_pairing(f1, f2, qv) - t_pairing(psi, ctm, qv, minus=True)


# ---------------------------------------------------------------------------
# verification helpers


def verify_functional_equation(qv, d_range=range(-6, 7), e_range=range(-4, 5)) -> bool:
    """CT_B Eis_B = identity + (forward intertwiner after degree negation), on indicator inputs."""
    for e in e_range:
        phi = TFunction.from_dict({e: _one_like(qv)}, qv)
        lhs = ct_B(eis_B(phi, qv), qv)
        flipped = TFunction(lambda d, e=e: phi.value(-d), upper=-e, lower=-e, qv=qv)
        rw = global_R(flipped, qv)
        for d in d_range:
            rhs = phi.value(d) + rw.value(d)
            if lhs.value(d) != rhs:
                return False
    return True


def verify_adjunction(f: GFunction, phi: TFunction, qv) -> bool:
    """<CT f, phi> = naive(f, Eis phi) for finitely supported data."""
    lhs = t_pairing(ct_B(f, qv), phi, qv)
    rhs = naive_pairing(f, eis_B(phi, qv), qv)
    return lhs == rhs


def explain_conventions() -> str:
    return CONVENTIONS


CONVENTIONS = """\
Degree and normalization conventions of the rank-one global model
-----------------------------------------------------------------
* Bundle classes are n >= 0 for O(n) + O(-n); torus classes are the degree d of
  the line subbundle defining the standard reduction. Opposite-parabolic data
  are stored in their own torus coordinate; transport is degree negation.
* mes(K) = 1 and mes(U(A)/U(F)) = 1. On the projective line mes(O_A) = q, so the
  global modulus twist is q^{-2d-1}: the familiar q^{-2d} of the local modulus
  times one factor q^{-1} from the genus-zero normalization.
* Torus-side pairing weight: q^{-2d-1}/(q-1) (opposite side: q^{2d-1}/(q-1)).
  With these weights the constant term is the exact adjoint of the Eisenstein
  sum, and the composition CT Eis equals identity + R, with
  R(psi)(d) = q^{2d+1} * sum_m mu_hat(m) psi(d+m),
  R^{-1}(phi)(d) = sum_m q^{-2(d+m)-1} nu_hat(m) phi(d+m).
* Kernel series: mu_hat has generating function (1-t)/(1-q^2 t) (coefficients
  1, q^2-1, q^4-q^2, ...) and nu_hat has (1-q^2 t)/(1-t) (coefficients
  1, 1-q^2, 1-q^2, ...); both arise as Euler products of the local factors over
  the closed points of the line and are oracle-checked by necklace counts.
* Signs: the parabolic sign is (-1)^(rank - |J|), so L = id - Eis- R^{-1} CT and
  L^{-1} = id - Eis CT; on constant-term-free vectors L is +identity.
"""
