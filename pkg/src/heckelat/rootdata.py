"""Split based root data, standard parabolic types, and finite Weyl groups, all in exact integer arithmetic."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import linalg
from .linalg import dot

Vec = tuple[int, ...]  # coweight, coordinates in the ambient lattice Z^rank
Covec = tuple[int, ...]  # weight, a functional on the coweight lattice via the dot product
QVec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]  # lattice automorphism acting on coweights, row-major

WEYL_CAP = 10**6


class RootDatumError(ValueError):
    pass


class WeylEnumerationError(RuntimeError):
    pass


def pair(chi, lam):
    """Pairing <chi, lam> of a weight with a (possibly rational) coweight."""
    return dot(chi, lam)


def mat_apply(m: Matrix, v) -> tuple:
    return tuple(dot(row, v) for row in m)


def _as_vec(v) -> Vec:
    return tuple(int(x) for x in v)


class RootDatum:
    """Root datum on Lambda = Z^rank with explicit simple coroots (vectors) and simple roots (covectors).

    All derived data (coroot/root systems, the Weyl group as integer matrices,
    2*rho and 2*rho-check) is computed eagerly and frozen.
    """

    def __init__(self, name: str, rank: int, simple_coroots, simple_roots, weyl_cap: int = WEYL_CAP):
        self.name = str(name)
        self.rank = int(rank)
        self.simple_coroots: tuple[Vec, ...] = tuple(_as_vec(v) for v in simple_coroots)
        self.simple_roots: tuple[Covec, ...] = tuple(_as_vec(v) for v in simple_roots)
        self.n_simple = len(self.simple_coroots)
        if len(self.simple_roots) != self.n_simple:
            raise RootDatumError("simple root and coroot lists must have equal length")
        for v in self.simple_coroots + self.simple_roots:
            if len(v) != self.rank:
                raise RootDatumError("vector length does not match rank")
        self.cartan: tuple[Vec, ...] = tuple(
            tuple(int(pair(self.simple_roots[i], self.simple_coroots[j])) for j in range(self.n_simple))
            for i in range(self.n_simple)
        )
        self._check_cartan()
        self._simple_reflections = tuple(self._reflection(i) for i in range(self.n_simple))
        self._enumerate_weyl(weyl_cap)
        self._w_inverse = {w: self._invert(w) for w in self.weyl_elements}
        self._build_roots()
        self.w0 = self._find_longest(range(self.n_simple))
        self.two_rho: Vec = tuple(sum(col) for col in zip(*self.positive_coroots)) if self.positive_coroots else (0,) * self.rank
        self.two_rho_check: Covec = tuple(sum(col) for col in zip(*self.positive_roots)) if self.positive_roots else (0,) * self.rank

    # -- construction helpers -------------------------------------------
    def _check_cartan(self) -> None:
        c = self.cartan
        n = self.n_simple
        for i in range(n):
            if c[i][i] != 2:
                raise RootDatumError(f"<coroot_{i}, root_{i}> = {c[i][i]} != 2")
            for j in range(n):
                if i != j and c[i][j] > 0:
                    raise RootDatumError("off-diagonal Cartan entries must be <= 0")
                if i != j and (c[i][j] == 0) != (c[j][i] == 0):
                    raise RootDatumError("Cartan matrix zero pattern must be symmetric")
        if linalg.rank(self.simple_coroots) != n or linalg.rank(self.simple_roots) != n:
            raise RootDatumError("simple coroots (and roots) must be linearly independent")
        # finite type: symmetrize and require all principal minors positive
        d = self._symmetrizer()
        sym = [[Fraction(d[i]) * c[i][j] for j in range(n)] for i in range(n)]
        for subset in range(1, 1 << n):
            idx = [i for i in range(n) if subset >> i & 1]
            if _det([[sym[i][j] for j in idx] for i in idx]) <= 0:
                raise RootDatumError("Cartan matrix is not of finite type (nonpositive principal minor)")

    def _symmetrizer(self) -> list[Fraction]:
        n = self.n_simple
        d = [Fraction(0)] * n
        for start in range(n):
            if d[start]:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if self.cartan[i][j] and i != j:
                        val = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        if d[j] == 0:
                            d[j] = val
                            stack.append(j)
                        elif d[j] != val:
                            raise RootDatumError("Cartan matrix is not symmetrizable")
        return d

    def _reflection(self, i: int) -> Matrix:
        # s_i(lam) = lam - <alpha-check_i, lam> alpha_i
        rows = []
        for r in range(self.rank):
            row = [int(r == cidx) for cidx in range(self.rank)]
            for cidx in range(self.rank):
                row[cidx] -= self.simple_coroots[i][r] * self.simple_roots[i][cidx]
            rows.append(tuple(row))
        return tuple(rows)

    def _enumerate_weyl(self, cap: int) -> None:
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        seen = {ident}
        frontier = [ident]
        order = [ident]
        while frontier:
            new = []
            for w in frontier:
                for s in self._simple_reflections:
                    ws = tuple(tuple(dot(s_row, col) for col in zip(*w)) for s_row in s)
                    if ws not in seen:
                        seen.add(ws)
                        new.append(ws)
                        if len(seen) > cap:
                            raise WeylEnumerationError(f"Weyl enumeration exceeded cap {cap}")
            new.sort()
            order.extend(new)
            frontier = new
        self.weyl_elements: tuple[Matrix, ...] = tuple(order)
        expected = self.expected_weyl_order()
        if len(self.weyl_elements) != expected:
            raise RootDatumError(f"|W| = {len(self.weyl_elements)} does not match classification ({expected})")

    def _build_roots(self) -> None:
        coroots = set()
        for i, a in enumerate(self.simple_coroots):
            for w in self.weyl_elements:
                coroots.add(tuple(int(x) for x in mat_apply(w, a)))
        pos, neg = [], []
        for v in sorted(coroots):
            coeffs = self.coroot_coordinates(v)
            if all(c >= 0 for c in coeffs):
                pos.append(v)
            else:
                neg.append(v)
        if len(pos) != len(neg) or 2 * len(pos) != len(coroots):
            raise RootDatumError("coroot system is not split into positive/negative halves")
        self.positive_coroots: tuple[Vec, ...] = tuple(pos)
        self.coroots: frozenset[Vec] = frozenset(coroots)
        roots = set()
        for i, chk in enumerate(self.simple_roots):
            for w in self.weyl_elements:
                roots.add(tuple(int(x) for x in self.act_on_weight(w, chk)))
        posr = []
        for chi in sorted(roots):
            coeffs = self.root_coordinates(chi)
            if all(c >= 0 for c in coeffs):
                posr.append(chi)
        if 2 * len(posr) != len(roots) or len(posr) != len(pos):
            raise RootDatumError("root system is not split into positive/negative halves")
        self.positive_roots: tuple[Covec, ...] = tuple(posr)
        self.roots: frozenset[Covec] = frozenset(roots)

    def _invert(self, w: Matrix) -> Matrix:
        inv = linalg.inverse(w)
        return tuple(tuple(int(x) for x in row) for row in inv)

    def _find_longest(self, indices) -> Matrix:
        pos = set(self.positive_coroots)
        neg = {tuple(-x for x in a) for a in pos}
        for w in self.weyl_elements:
            if all(mat_apply(w, a) in neg for a in pos):
                return w
        raise RootDatumError("no longest element found")

    # -- queries -----------------------------------------------------------
    def expected_weyl_order(self) -> int:
        """Order of W predicted by the classification of the Cartan matrix."""
        n = self.n_simple
        comp_seen = [False] * n
        total = 1
        for start in range(n):
            if comp_seen[start]:
                continue
            comp = []
            stack = [start]
            comp_seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not comp_seen[j] and self.cartan[i][j] != 0:
                        comp_seen[j] = True
                        stack.append(j)
            total *= _component_weyl_order(self.cartan, sorted(comp))
        return total

    def coroot_coordinates(self, v: Vec) -> tuple[Fraction, ...]:
        """Coordinates of v in the basis of simple coroots (v must lie in their span)."""
        cols = list(zip(*self.simple_coroots))
        sol = linalg.solve(cols, v)
        if sol is None:
            raise RootDatumError(f"{v} is not in the span of the simple coroots")
        return sol

    def root_coordinates(self, chi: Covec) -> tuple[Fraction, ...]:
        cols = list(zip(*self.simple_roots))
        sol = linalg.solve(cols, chi)
        if sol is None:
            raise RootDatumError(f"{chi} is not in the span of the simple roots")
        return sol

    def act_on_weight(self, w: Matrix, chi) -> Covec:
        """(w . chi)(lam) = chi(w^{-1} lam); chi as a covector row."""
        winv = self._w_inverse.get(w) or self._invert(w)
        return tuple(dot(chi, col) for col in zip(*winv))

    def w_inverse(self, w: Matrix) -> Matrix:
        return self._w_inverse.get(w) or self._invert(w)

    def reflection(self, i: int) -> Matrix:
        return self._simple_reflections[i]

    def is_in_subgroup(self, w: Matrix, indices) -> bool:
        """Membership of w in the subgroup generated by the listed simple reflections."""
        return w in self.subgroup(frozenset(indices))

    def subgroup(self, indices: frozenset) -> frozenset:
        key = frozenset(indices)
        cache = getattr(self, "_subgroup_cache", None)
        if cache is None:
            cache = {}
            self._subgroup_cache = cache
        if key not in cache:
            ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
            seen = {ident}
            frontier = [ident]
            gens = [self._simple_reflections[i] for i in sorted(key)]
            while frontier:
                new = []
                for w in frontier:
                    for s in gens:
                        ws = tuple(tuple(dot(s_row, col) for col in zip(*w)) for s_row in s)
                        if ws not in seen:
                            seen.add(ws)
                            new.append(ws)
                frontier = new
            cache[key] = frozenset(seen)
        return cache[key]

    def in_span_of_simples(self, v: Vec, indices) -> bool:
        coeffs = self.coroot_coordinates(v)
        allowed = set(indices)
        return all(coeffs[j] == 0 for j in range(self.n_simple) if j not in allowed)

    def is_dominant(self, lam, indices=None) -> bool:
        idx = range(self.n_simple) if indices is None else sorted(indices)
        return all(pair(self.simple_roots[i], lam) >= 0 for i in idx)

    def dominant_representative(self, lam, indices=None) -> tuple:
        """The dominant element of the W_M-orbit of lam (M given by the index set)."""
        idx = list(range(self.n_simple)) if indices is None else sorted(indices)
        cur = tuple(Fraction(x) for x in lam)
        while True:
            neg = next((i for i in idx if pair(self.simple_roots[i], cur) < 0), None)
            if neg is None:
                return cur
            cur = tuple(Fraction(x) for x in mat_apply(self._simple_reflections[neg], cur))

    def config(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "simple_coroots": [list(v) for v in self.simple_coroots],
            "simple_roots": [list(v) for v in self.simple_roots],
        }


def _det(rows) -> Fraction:
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def _component_weyl_order(cartan, comp: list[int]) -> int:
    import math

    n = len(comp)
    prods = sorted(
        cartan[i][j] * cartan[j][i] for ii, i in enumerate(comp) for j in comp[ii + 1 :] if cartan[i][j] != 0
    )
    degrees = [sum(1 for j in comp if j != i and cartan[i][j] != 0) for i in comp]
    if n == 1:
        return 2
    if 3 in prods:
        return 12  # G2
    if 2 in prods:
        if n == 2:
            return 8  # B2 = C2
        if n == 4 and prods.count(2) == 1 and max(degrees) == 2:
            return 1152  # F4
        return 2**n * math.factorial(n)  # B_n / C_n
    # simply laced
    if max(degrees) <= 2:
        return math.factorial(n + 1)  # A_n
    # one branch node: D or E by arm lengths
    branch = comp[degrees.index(3)]
    arms = []
    for j in comp:
        if j != branch and cartan[branch][j] != 0:
            length = 1
            prev, cur = branch, j
            while True:
                nxt = [k for k in comp if k not in (prev,) and k != cur and cartan[cur][k] != 0]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return 2 ** (n - 1) * math.factorial(n)  # D_n
    if arms == [1, 2, 2]:
        return 51840  # E6
    if arms == [1, 2, 3]:
        return 2903040  # E7
    if arms == [1, 2, 4]:
        return 696729600  # E8
    raise RootDatumError("unrecognized simply-laced diagram")


class ParabolicType:
    """A standard parabolic type: a subset J of simple-root indices plus derived Levi data."""

    def __init__(self, rd: RootDatum, indices):
        self.rd = rd
        self.indices: frozenset[int] = frozenset(int(i) for i in indices)
        bad = [i for i in self.indices if not 0 <= i < rd.n_simple]
        if bad:
            raise RootDatumError(f"parabolic indices out of range: {bad}")
        idx = sorted(self.indices)
        self.pos_coroots_levi = tuple(a for a in rd.positive_coroots if rd.in_span_of_simples(a, idx))
        self.pos_coroots_unipotent = tuple(a for a in rd.positive_coroots if a not in set(self.pos_coroots_levi))
        self.coroots_levi = frozenset(self.pos_coroots_levi) | frozenset(tuple(-x for x in a) for a in self.pos_coroots_levi)
        self.pos_roots_levi = tuple(
            chi for chi in rd.positive_roots if all(rd.root_coordinates(chi)[j] == 0 for j in range(rd.n_simple) if j not in self.indices)
        )
        self.roots_levi = frozenset(self.pos_roots_levi) | frozenset(tuple(-x for x in c) for c in self.pos_roots_levi)
        self.pos_roots_unipotent = tuple(chi for chi in rd.positive_roots if chi not in set(self.pos_roots_levi))
        self.two_rho_check_levi: Covec = (
            tuple(sum(col) for col in zip(*self.pos_roots_levi)) if self.pos_roots_levi else (0,) * rd.rank
        )
        self.two_rho_check_P: Covec = tuple(a - b for a, b in zip(rd.two_rho_check, self.two_rho_check_levi))
        for j in idx:
            if pair(self.two_rho_check_P, rd.simple_coroots[j]) != 0:
                raise RootDatumError("2rho_P does not annihilate the Levi coroots")
        self.weyl_levi: frozenset[Matrix] = rd.subgroup(self.indices)
        self.w0_levi: Matrix = self._longest_levi()
        w2 = linalg.mat_mul(self.w0_levi, self.w0_levi)
        if w2 != linalg.identity(rd.rank):
            raise RootDatumError("w0_M does not square to the identity")
        self.projection: tuple[QVec, ...] = self._projection_matrix()

    def _longest_levi(self) -> Matrix:
        possed = set(self.pos_coroots_levi)
        for w in sorted(self.weyl_levi):
            if all(tuple(-x for x in mat_apply(w, a)) in possed for a in self.pos_coroots_levi):
                return w
        raise RootDatumError("no longest element in Levi Weyl group")

    def _projection_matrix(self) -> tuple[QVec, ...]:
        # projection along span(alpha_j, j in J) onto {lam : <alpha-check_j, lam> = 0 for j in J}
        rd = self.rd
        idx = sorted(self.indices)
        n = rd.rank
        if not idx:
            return linalg.identity(n)
        a = [[Fraction(pair(rd.simple_roots[i], rd.simple_coroots[j])) for j in idx] for i in idx]
        ainv = linalg.inverse(a)
        # P(lam) = lam - sum_j c_j(lam) alpha_j where A c = (<alpha-check_i, lam>)_{i in J}
        cols = []
        for c in range(n):
            e = [Fraction(int(r == c)) for r in range(n)]
            rhs = [Fraction(pair(rd.simple_roots[i], e)) for i in idx]
            coeffs = linalg.mat_vec(ainv, rhs)
            img = list(e)
            for ji, j in enumerate(idx):
                for r in range(n):
                    img[r] -= coeffs[ji] * rd.simple_coroots[j][r]
            cols.append(img)
        return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))

    def project(self, lam) -> QVec:
        """Class of lam in Lambda_{G,P} (rational coordinates of the canonical slice)."""
        return linalg.mat_vec(self.projection, tuple(Fraction(x) for x in lam))

    def height(self, lam):
        """Grading <2rho_P, lam> used for all truncations."""
        return pair(self.two_rho_check_P, lam)

    def is_levi_dominant(self, lam) -> bool:
        return self.rd.is_dominant(lam, self.indices)

    def __repr__(self):
        return f"ParabolicType({self.rd.name}, J={sorted(self.indices)})"


def dominance_leq(rd: RootDatum, parabolic: ParabolicType, lam, mu) -> bool:
    """mu <=_M lam: lam - mu is a nonnegative rational combination of the positive coroots of M."""
    from . import cones

    diff = tuple(Fraction(a) - Fraction(b) for a, b in zip(lam, mu))
    if all(x == 0 for x in diff):
        return True
    gens = parabolic.pos_coroots_levi
    if not gens:
        return False
    return cones.nonneg_combination(gens, diff) is not None


# ---------------------------------------------------------------------------
# presets and loading

_PRESET_CARTANS: dict[str, list[list[int]]] = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "C3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
}


def _preset_config(name: str) -> dict:
    if name in _PRESET_CARTANS:
        c = _PRESET_CARTANS[name]
        n = len(c)
        return {
            "name": name,
            "rank": n,
            "cartan": c,
            "simple_coroots": [[int(i == j) for j in range(n)] for i in range(n)],
            "simple_roots": [list(row) for row in c],
        }
    if name == "GL2":
        # rank-2 lattice with a single simple coroot e1 - e2
        return {
            "name": "GL2",
            "rank": 2,
            "cartan": [[2]],
            "simple_coroots": [[1, -1]],
            "simple_roots": [[1, -1]],
        }
    raise RootDatumError(f"unknown preset {name!r}")


PRESET_NAMES = tuple(sorted(_PRESET_CARTANS) + ["GL2"])


def load_root_datum(config) -> RootDatum:
    """Build a RootDatum from a preset name, config dict, JSON text, or path to a JSON file."""
    if isinstance(config, RootDatum):
        return config
    if isinstance(config, Path):
        config = config.read_text()
    if isinstance(config, str):
        name = config.strip()
        if name in PRESET_NAMES:
            config = _preset_config(name)
        else:
            try:
                config = json.loads(config)
            except json.JSONDecodeError as e:
                raise RootDatumError(f"cannot parse root-datum config: {e}") from e
    if not isinstance(config, dict):
        raise RootDatumError("config must be a mapping")
    missing = {"name", "rank", "cartan", "simple_coroots", "simple_roots"} - set(config)
    if missing:
        raise RootDatumError(f"config missing keys: {sorted(missing)}")
    rd = RootDatum(config["name"], config["rank"], config["simple_coroots"], config["simple_roots"])
    declared = [list(map(int, row)) for row in config["cartan"]]
    if declared != [list(r) for r in rd.cartan]:
        raise RootDatumError("declared cartan matrix is inconsistent with the root/coroot pairings")
    return rd


def parabolic(rd: RootDatum, indices) -> ParabolicType:
    """Standard parabolic with Levi generated by the given 0-based simple indices."""
    return ParabolicType(rd, indices)


def weyl_elements(rd: RootDatum) -> tuple[Matrix, ...]:
    """The complete list of Weyl elements as integer matrices on the coweight lattice."""
    return rd.weyl_elements
