"""Finite matrix groups over cyclotomic fields and their Molien series.

Elements are either diagonal (an exponent vector k, standing for
diag(zeta_N^k_1, ..., zeta_N^k_n)) or full matrices of CycloNumbers.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

from .exactnum import (
    CycloNumber,
    Q,
    binomial,
    cyclo_from_json,
    cyclo_inverse,
    embed_root,
    fmt_q,
)
from .fgraded import RelationCheck, Residual, check_relations
from .series import LaurentAtOne, RationalFunction, rational_to_laurent

DEFAULT_MAX_ORDER = 10000


class OrderExceeded(RuntimeError):
    pass


class NonRationalResult(ArithmeticError):
    pass


class EigenvaluesUnavailable(ValueError):
    pass


class InconsistentDegree(ArithmeticError):
    """Pseudoreflection count disagrees with 2 gamma_1 / gamma_0."""


def _lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def _zero(n: int) -> CycloNumber:
    return CycloNumber(n)


def _one(n: int) -> CycloNumber:
    return CycloNumber(n, [1])


# ---------------------------------------------------------------------------
# linear algebra over Q(zeta_N)
# ---------------------------------------------------------------------------

def _rank(rows: list[list[CycloNumber]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = cyclo_inverse(m[rank][col])
        for i in range(rank + 1, len(m)):
            if m[i][col].is_zero():
                continue
            f = m[i][col] * inv
            m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _series_mul(a: list, b: list, deg: int, zero) -> list:
    out = [zero] * (deg + 1)
    for i, x in enumerate(a[: deg + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: deg + 1 - i]):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _series_div_unit(a: list, b: list, deg: int, zero) -> list:
    """a / b to degree deg, where b has constant term 1."""
    a = a + [zero] * (deg + 1 - len(a))
    out = []
    for k in range(deg + 1):
        s = a[k]
        for i in range(1, min(k, len(b) - 1) + 1):
            if not b[i].is_zero():
                s = s - b[i] * out[k - i]
        out.append(s)
    return out


def det_one_minus_tg(mat: Sequence[Sequence[CycloNumber]]) -> list[CycloNumber]:
    """Coefficients of det(I - t g) by fraction-free elimination.

    Every leading principal minor of I - t g is 1 at t = 0, so no pivoting
    is needed and each Bareiss division is an exact division by a series
    with unit constant term.
    """
    n = len(mat)
    order = mat[0][0].order
    zero = _zero(order)
    one = _one(order)
    m = [[[one if i == j else zero, -mat[i][j]] for j in range(n)] for i in range(n)]
    prev = [one]
    for k in range(n - 1):
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = [x - y for x, y in _pad_pair(
                    _series_mul(m[i][j], m[k][k], n, zero),
                    _series_mul(m[i][k], m[k][j], n, zero), zero)]
                m[i][j] = _series_div_unit(num, prev, n, zero)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d + [zero] * (n + 1 - len(d))


def _pad_pair(a: list, b: list, zero):
    k = max(len(a), len(b))
    return zip(a + [zero] * (k - len(a)), b + [zero] * (k - len(b)))


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupElement:
    """A diagonal exponent vector or a matrix over Q(zeta_order).

    ``spectrum`` optionally lists eigenvalues as exponents of
    zeta_(spectrum_order).
    """

    order: int
    exponents: tuple | None = None
    matrix: tuple | None = None
    spectrum: tuple | None = None
    spectrum_order: int | None = None

    @classmethod
    def diagonal(cls, order: int, exponents: Sequence[int]) -> "GroupElement":
        return cls(order, exponents=tuple(k % order for k in exponents))

    @classmethod
    def from_matrix(cls, rows, order: int | None = None, spectrum=None,
                    spectrum_order: int | None = None) -> "GroupElement":
        cells = [[c if isinstance(c, CycloNumber) else CycloNumber.from_rational(c)
                  for c in row] for row in rows]
        if order is None:
            order = _lcm(*(c.order for row in cells for c in row))
        mat = tuple(tuple(c.lift(order) for c in row) for row in cells)
        if spectrum is not None:
            spectrum_order = spectrum_order or order
            spectrum = tuple(sorted(k % spectrum_order for k in spectrum))
        return cls(order, matrix=mat, spectrum=spectrum, spectrum_order=spectrum_order)

    @property
    def is_diagonal(self) -> bool:
        return self.exponents is not None

    @property
    def dim(self) -> int:
        return len(self.exponents) if self.is_diagonal else len(self.matrix)

    def lift(self, order: int) -> "GroupElement":
        if order == self.order:
            return self
        if self.is_diagonal:
            step = order // self.order
            return GroupElement.diagonal(order, [k * step for k in self.exponents])
        return GroupElement(order, matrix=tuple(tuple(c.lift(order) for c in row)
                                                for row in self.matrix),
                            spectrum=self.spectrum, spectrum_order=self.spectrum_order)

    def as_matrix(self) -> tuple:
        if not self.is_diagonal:
            return self.matrix
        n = self.dim
        z = _zero(self.order)
        return tuple(tuple(embed_root(self.order, k) if i == j else z for j in range(n))
                     for i, k in enumerate(self.exponents))

    def key(self) -> tuple:
        if self.is_diagonal:
            return ("d", self.order, self.exponents)
        # a diagonal matrix and the matching exponent vector must collide
        m = self.matrix
        n = len(m)
        if all(m[i][j].is_zero() for i in range(n) for j in range(n) if i != j):
            exps = [_root_exponent(m[i][i], self.order) for i in range(n)]
            if None not in exps:
                return ("d", self.order, tuple(exps))
        return ("m", self.order, tuple(c.key() for row in m for c in row))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        n = _lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        if a.is_diagonal and b.is_diagonal:
            return GroupElement.diagonal(n, [x + y for x, y in zip(a.exponents, b.exponents)])
        ma, mb = a.as_matrix(), b.as_matrix()
        d = len(ma)
        z = _zero(n)
        prod = []
        for i in range(d):
            row = []
            for j in range(d):
                s = z
                for k in range(d):
                    if not ma[i][k].is_zero() and not mb[k][j].is_zero():
                        s = s + ma[i][k] * mb[k][j]
                row.append(s)
            prod.append(tuple(row))
        return GroupElement(n, matrix=tuple(prod))

    def is_identity(self) -> bool:
        if self.is_diagonal:
            return not any(self.exponents)
        return self.key() == identity(self.dim, self.order).key()

    def fixed_dim(self) -> int:
        """p(g) = n - rank(g - I)."""
        if self.is_diagonal:
            return sum(1 for k in self.exponents if k == 0)
        n = self.dim
        one = _one(self.order)
        rows = [[c - one if i == j else c for j, c in enumerate(row)]
                for i, row in enumerate(self.matrix)]
        return n - _rank(rows)

    def element_order(self, cap: int = DEFAULT_MAX_ORDER) -> int:
        if self.is_diagonal:
            return _lcm(*(self.order // math.gcd(self.order, k) for k in self.exponents))
        g, k = self, 1
        while not g.is_identity():
            g = g * self
            k += 1
            if k > cap:
                raise OrderExceeded(f"element order exceeds {cap}")
        return k

    def eigen_exponents(self, derive: bool = False) -> tuple[int, tuple] | None:
        """(S, ks) with eigenvalues zeta_S^k, or None if not known."""
        if self.is_diagonal:
            return self.order, self.exponents
        if self.spectrum is not None:
            return self.spectrum_order, self.spectrum
        m = self.matrix
        n = len(m)
        if all(m[i][j].is_zero() for i in range(n) for j in range(i)) or \
                all(m[i][j].is_zero() for i in range(n) for j in range(i + 1, n)):
            s = _lcm(2, self.order)
            exps = [_root_exponent(m[i][i].lift(s), s) for i in range(n)]
            if None not in exps:
                return s, tuple(sorted(exps))
        if not derive:
            return None
        return self._derive_spectrum()

    def _derive_spectrum(self) -> tuple[int, tuple]:
        # finite order means diagonalizable, so the multiplicity of a
        # candidate eigenvalue is the nullity of g - lambda I
        mo = self.element_order()
        s = _lcm(self.order, mo)
        g = self.lift(s)
        n = self.dim
        exps: list[int] = []
        for k in range(mo):
            lam = embed_root(s, k * (s // mo))
            rows = [[c - lam if i == j else c for j, c in enumerate(row)]
                    for i, row in enumerate(g.matrix)]
            exps += [k * (s // mo)] * (n - _rank(rows))
        if len(exps) != n:
            raise ArithmeticError("eigenvalue multiplicities do not add up")
        return s, tuple(exps)

    def to_json(self) -> dict:
        if self.is_diagonal:
            return {"diag": list(self.exponents)}
        out = {"matrix": [[_cell_json(c) for c in row] for row in self.matrix]}
        if self.spectrum is not None:
            out["spectrum"] = list(self.spectrum)
        return out


def _cell_json(c: CycloNumber):
    v = c.rational_value()
    if v is not None:
        return fmt_q(v)
    return {"order": c.order, "coeffs": [fmt_q(x) for x in c.coeffs]}


@lru_cache(maxsize=None)
def _roots_table(order: int) -> dict:
    return {embed_root(order, k).key(): k for k in range(order)}


def _root_exponent(c: CycloNumber, order: int) -> int | None:
    return _roots_table(order).get(c.lift(order).key())


def identity(dim: int, order: int = 1) -> GroupElement:
    return GroupElement.diagonal(order, [0] * dim)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

@dataclass
class FiniteGroup:
    elements: list[GroupElement]
    dim: int
    cyclo_order: int
    strata: dict[int, list[GroupElement]] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    def stratum_sizes(self) -> dict[int, int]:
        return {p: len(self.strata.get(p, [])) for p in range(self.dim, -1, -1)}

    def exponent(self) -> int:
        return _lcm(*(g.element_order() for g in self.elements))


def group_closure(generators: Sequence[GroupElement],
                  max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Breadth-first closure of the generators under multiplication."""
    if not generators:
        raise ValueError("at least one generator is required")
    dims = {g.dim for g in generators}
    if len(dims) != 1:
        raise ValueError(f"generators have different dimensions {sorted(dims)}")
    n = dims.pop()
    order = _lcm(*(g.order for g in generators))
    gens = [g.lift(order) for g in generators]
    # a supplied spectrum also fixes the spectra of the generator's powers
    known: dict = {}
    for g in gens:
        if g.spectrum is None:
            continue
        p, k = g, 1
        while True:
            powered = tuple(sorted(k * x % g.spectrum_order for x in g.spectrum))
            known.setdefault(p.key(), replace(p, spectrum=powered, spectrum_order=g.spectrum_order))
            if p.is_identity():
                break
            p, k = p * g, k + 1
            if k > max_order:
                raise OrderExceeded(f"generator order exceeds {max_order}")
    e = identity(n, order)
    seen = {e.key(): e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            k = y.key()
            if k in seen:
                continue
            seen[k] = known.get(k, y)
            if len(seen) > max_order:
                raise OrderExceeded(f"closure exceeds {max_order} elements")
            queue.append(y)
    elements = list(seen.values())
    strata: dict[int, list[GroupElement]] = {}
    for g in elements:
        strata.setdefault(g.fixed_dim(), []).append(g)
    return FiniteGroup(elements, n, order, strata)


def pseudoreflection_count(G: FiniteGroup) -> int:
    return len(G.strata.get(G.dim - 1, []))


# ---------------------------------------------------------------------------
# Molien series
# ---------------------------------------------------------------------------

def _diag_numerator(exps: Sequence[int], order: int, E: int, acc: dict):
    """Add prod_j (1 - t^E)/(1 - zeta^k_j t) into acc[deg][zeta exponent]."""
    poly = {0: {0: 1}}
    for k in exps:
        nxt: dict[int, dict[int, int]] = {}
        for d, zs in poly.items():
            for i in range(E):
                row = nxt.setdefault(d + i, {})
                for z, c in zs.items():
                    ze = (z + k * i) % order
                    row[ze] = row.get(ze, 0) + c
        poly = nxt
    for d, zs in poly.items():
        row = acc.setdefault(d, [0] * order)
        for z, c in zs.items():
            row[z] += c


def molien_series(G: FiniteGroup, K: int) -> tuple[LaurentAtOne, RationalFunction]:
    """(Laurent coefficients gamma_0..gamma_K at t = 1, Hilbert series)."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    n, N = G.dim, G.cyclo_order
    E = G.exponent()
    top = n * E
    zero = _zero(N)
    # common denominator |G| (1 - t^E)^n
    base = [zero] * (top + 1)
    for j in range(n + 1):
        base[j * E] = CycloNumber(N, [(-1) ** j * binomial(n, j)])
    diag_acc: dict[int, list[int]] = {}
    total = [zero] * (top + 1)
    for g in G.elements:
        if g.is_diagonal:
            _diag_numerator(g.exponents, N, E, diag_acc)
            continue
        det = det_one_minus_tg(g.matrix)
        q = _series_div_unit(base, det, top, zero)
        total = [a + b for a, b in zip(total, q)]
    for d, row in diag_acc.items():
        total[d] = total[d] + CycloNumber(N, row)
    num = []
    for d, c in enumerate(total):
        v = c.rational_value()
        if v is None:
            raise NonRationalResult(f"Molien numerator has irrational t^{d} coefficient {c!r}")
        num.append(v)
    den = [Fraction(0)] * (top + 1)
    for j in range(n + 1):
        den[j * E] = Fraction((-1) ** j * binomial(n, j) * G.order)
    rf = RationalFunction(num, den)
    lau = rational_to_laurent(rf, K)
    if lau.pole_order != n:
        raise NonRationalResult(f"pole order {lau.pole_order} differs from dimension {n}")
    return lau, rf


@lru_cache(maxsize=None)
def _factor_series(s: int, k: int, K: int) -> tuple:
    """Coefficients of 1/(1 - mu t) in powers of (1 - t), mu = zeta_s^k != 1."""
    mu = embed_root(s, k)
    inv = cyclo_inverse(mu - 1)
    out = []
    c = -inv  # -mu^i / (mu - 1)^(i+1) at i = 0
    for _ in range(K + 1):
        out.append(c)
        c = c * mu * inv
    return tuple(out)


def stratified_gammas(G: FiniteGroup, K: int, derive_spectra: bool = False) -> list[Fraction]:
    """gamma_0..gamma_K summed stratum by stratum from eigenvalues.

    An element with p(g) = p contributes only to gamma_(n-p) and beyond,
    so gamma_k needs spectra for elements with p >= n - k only.
    """
    n = G.dim
    acc: list[CycloNumber | Fraction] = [Fraction(0)] * (K + 1)
    for g in G.elements:
        p = g.fixed_dim()
        base = n - p
        if base > K:
            continue
        if p == n:
            acc[0] += 1
            continue
        eig = g.eigen_exponents(derive=derive_spectra)
        if eig is None:
            raise EigenvaluesUnavailable(
                f"element with p(g) = {p} has no known spectrum; supply one or derive it")
        s, ks = eig
        movers = [k for k in ks if k % s]
        if len(ks) - len(movers) != p:
            raise ValueError("supplied spectrum disagrees with the fixed-space dimension")
        room = K - base
        prod: list = [_one(s)] + [_zero(s)] * room
        for k in movers:
            f = _factor_series(s, k % s, room)
            prod = _series_mul(prod, list(f), room, _zero(s))
        for i, c in enumerate(prod):
            acc[base + i] = c + acc[base + i]
    out = []
    for i, c in enumerate(acc):
        v = c if isinstance(c, Fraction) else c.rational_value()
        if v is None:
            raise NonRationalResult(f"stratified gamma_{i} is irrational: {c!r}")
        out.append(v / G.order)
    return out


# ---------------------------------------------------------------------------
# screening
# ---------------------------------------------------------------------------

def default_K(r: int, m_max: int) -> int:
    """Smallest K that feeds every relation up to m_max for degree r."""
    return 2 * m_max + abs(r)


@dataclass
class ScreenReport:
    group_order: int
    dim: int
    strata: dict[int, int]
    r: int
    gammas: list[Fraction]
    hilbert: RationalFunction
    relations: RelationCheck

    @property
    def gorenstein_possible(self) -> bool:
        return self.relations.consistent

    @property
    def certificate(self) -> Residual | None:
        fv = self.relations.first_violation
        return None if fv is None else fv[1]

    @property
    def consistent_up_to(self) -> int | None:
        """Largest m tested in every open-ended family, when consistent."""
        if not self.gorenstein_possible:
            return None
        tops = [max((res.m for res in rep.residuals), default=0)
                for rep in self.relations.reports if rep.family != "neg-first"]
        return min(tops) if tops else None

    @property
    def verdict(self) -> str:
        if self.gorenstein_possible:
            return f"consistent-up-to-{self.consistent_up_to}"
        return "not-gorenstein"

    def to_json(self) -> dict:
        out = {
            "group": {"order": self.group_order, "dim": self.dim,
                      "strata": {str(p): c for p, c in self.strata.items()},
                      "pseudoreflections": self.strata.get(self.dim - 1, 0)},
            "r": self.r,
            "gammas": [fmt_q(g) for g in self.gammas],
            "hilbert": self.hilbert.to_json(),
            "verdict": self.verdict,
        }
        out.update({k: v for k, v in self.relations.to_json().items() if k != "r"})
        return out


def gorenstein_screen(G: FiniteGroup, K: int | None = None, m_max: int = 12) -> ScreenReport:
    r = pseudoreflection_count(G)
    if K is None:
        K = default_K(r, m_max)
    lau, rf = molien_series(G, K)
    g = list(lau.gammas)
    if g[0] * r != 2 * g[1]:
        raise InconsistentDegree(
            f"{r} pseudoreflections but 2 gamma_1 / gamma_0 = {fmt_q(2 * g[1] / g[0])}")
    rel = check_relations(g, r, m_max)
    return ScreenReport(G.order, G.dim, G.stratum_sizes(), r, g, rf, rel)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _cell_from_json(obj, order: int) -> CycloNumber:
    if isinstance(obj, dict) and "root" in obj:
        return embed_root(order, int(obj["root"]))
    return cyclo_from_json(obj)


def generators_from_json(obj: dict) -> list[GroupElement]:
    n = int(obj["dim"])
    N = int(obj.get("cyclo_order", 1))
    gens = []
    for item in obj["generators"]:
        if "diag" in item:
            g = GroupElement.diagonal(N, [int(k) for k in item["diag"]])
        elif "matrix" in item:
            rows = [[_cell_from_json(c, N) for c in row] for row in item["matrix"]]
            orders = {c.order for row in rows for c in row}
            if any(N % o for o in orders):
                N = _lcm(N, *orders)
            g = GroupElement.from_matrix(rows, _lcm(N, *orders),
                                         spectrum=item.get("spectrum"),
                                         spectrum_order=item.get("spectrum_order"))
        else:
            raise ValueError("generator needs a 'diag' or 'matrix' key")
        if g.dim != n:
            raise ValueError(f"generator of dimension {g.dim} in a dim-{n} group")
        gens.append(g)
    return gens


def group_from_json(obj: dict, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return group_closure(generators_from_json(obj), max_order)


def group_to_json(gens: Sequence[GroupElement]) -> dict:
    order = _lcm(*(g.order for g in gens))
    return {"dim": gens[0].dim, "cyclo_order": order,
            "generators": [g.lift(order).to_json() for g in gens]}
