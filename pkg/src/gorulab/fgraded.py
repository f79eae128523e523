"""Power series phi with phi(x/(x-1)) = (1-x)^r phi(x), graded by r.

Three membership tests are provided and are meant to be used against
each other:

* :func:`check_relations` evaluates the linear relations among the
  coefficients gamma_i;
* :func:`check_functional_equation` substitutes x -> x/(x-1) directly;
* :func:`delta_decompose` writes phi in the basis
  x^(2i) (x-2)^(-r-2i) using the even coefficients and checks the odd ones.

Every verdict is "consistent up to truncation": only finitely many
coefficients are ever inspected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import NamedTuple, Sequence

from .eulerbernoulli import bracket_r, unified_coeff
from .exactnum import DivisionByZero, Q, binomial, fmt_q, q_content
from .series import (
    TruncatedSeries,
    binomial_power,
    compose_mobius,
    one_minus_x_power,
)

FAMILY_TAGS = {
    "even": "eq1.5",
    "pos-odd": "eq1.6",
    "neg-first": "eq1.7",
    "neg-odd": "eq1.8",
}


class ConstraintViolation(ValueError):
    def __init__(self, index: int, value: Fraction):
        super().__init__(f"gamma_{index} must vanish, got {fmt_q(value)}")
        self.index = index
        self.value = value


class MissingFreeCoefficient(ValueError):
    pass


class InsufficientCoefficients(ValueError):
    def __init__(self, skipped: list[tuple[str, int]]):
        super().__init__(f"no relation is testable; skipped {skipped}")
        self.skipped = skipped


# ---------------------------------------------------------------------------
# the relation families
# ---------------------------------------------------------------------------

def _ceil_half(k: int) -> int:
    return -((-k) // 2)


def relation_row(family: str, r: int, m: int) -> tuple[int, list[Fraction]]:
    """(start index, coefficients) of relation m, including negative indices."""
    if family == "even":
        return m - r, [Fraction((-1) ** i * binomial(m - 1, i)) for i in range(m)]
    if family == "pos-odd":
        return m - 1, [Fraction((-1) ** i * binomial(2 * m + r - 2, m - i) * binomial(m + i, i))
                       for i in range(m + 1)]
    if family == "neg-first":
        return m - 1, [Fraction(binomial(m, i), binomial(1 - r, m + i)) for i in range(m + 1)]
    if family == "neg-odd":
        return m - r, [Fraction((-1) ** i * binomial(m, i) * (m + i), m) for i in range(m + 1)]
    raise ValueError(f"unknown family {family!r}")


def families_for(r: int) -> list[str]:
    if r >= 0:
        return ["even"] if r % 2 == 0 else ["pos-odd"]
    return ["neg-first", "even"] if r % 2 == 0 else ["neg-first", "neg-odd"]


def relation_ms(family: str, r: int, m_max: int) -> range:
    if family == "neg-first":
        # finite family; always checked in full
        return range(1, _ceil_half(-r) + 1)
    return range(1, m_max + 1)


@dataclass(frozen=True)
class Residual:
    m: int
    indices: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    value: Fraction

    @property
    def content(self) -> Fraction:
        return q_content(self.coeffs) or Fraction(1)

    @property
    def reduced_value(self) -> Fraction:
        """Residual of the row divided by the gcd of its coefficients."""
        return self.value / self.content

    def render(self, reduced: bool = True) -> str:
        """e.g. ``γ_1 - 3γ_2 + 2γ_3 = -1/18``."""
        scale = self.content if reduced else Fraction(1)
        parts = []
        for idx, c in zip(self.indices, self.coeffs):
            c = c / scale
            if not c:
                continue
            mag = abs(c)
            body = ("" if mag == 1 else fmt_q(mag)) + f"γ_{idx}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        value = self.reduced_value if reduced else self.value
        return "".join(parts) + f" = {fmt_q(value)}"


@dataclass
class RelationReport:
    family: str
    r: int
    residuals: list[Residual] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    @property
    def tag(self) -> str:
        return FAMILY_TAGS[self.family]

    @property
    def violation(self) -> Residual | None:
        for res in self.residuals:
            if res.value != 0:
                return res
        return None

    @property
    def verdict(self) -> str:
        v = self.violation
        return "consistent" if v is None else f"violated-at-{v.m}"

    def to_json(self) -> dict:
        return {
            "family": self.tag,
            "verdict": self.verdict,
            "residuals": [{"m": res.m, "residual": fmt_q(res.value),
                           "reduced": fmt_q(res.reduced_value)} for res in self.residuals],
            "skipped": list(self.skipped),
        }


@dataclass
class RelationCheck:
    """Reports for every relation family that applies to degree r."""

    r: int
    reports: list[RelationReport]

    @property
    def consistent(self) -> bool:
        return all(rep.violation is None for rep in self.reports)

    @property
    def first_violation(self) -> tuple[RelationReport, Residual] | None:
        for rep in self.reports:
            v = rep.violation
            if v is not None:
                return rep, v
        return None

    @property
    def skipped(self) -> list[tuple[str, int]]:
        return [(rep.tag, m) for rep in self.reports for m in rep.skipped]

    def to_json(self) -> dict:
        out = {"r": self.r, "consistent": self.consistent,
               "families": [rep.to_json() for rep in self.reports]}
        fv = self.first_violation
        if fv is not None:
            rep, res = fv
            out["violation"] = {"family": rep.tag, "m": res.m,
                                "residual": fmt_q(res.value),
                                "certificate": res.render()}
        return out


def check_relations(gammas: Sequence, r: int, m_max: int) -> RelationCheck:
    """Evaluate every applicable relation family on gamma_0, gamma_1, ...

    gamma_i for i < 0 is zero.  A relation whose highest index is beyond
    the supplied vector is skipped and listed in the report; if that
    leaves nothing to test, InsufficientCoefficients is raised.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    g = [Q(x) for x in gammas]
    reports = []
    for fam in families_for(r):
        rep = RelationReport(fam, r)
        for m in relation_ms(fam, r, m_max):
            start, coeffs = relation_row(fam, r, m)
            top = start + len(coeffs) - 1
            if top >= len(g):
                rep.skipped.append(m)
                continue
            idx, cs = [], []
            value = Fraction(0)
            for j, c in enumerate(coeffs):
                k = start + j
                if k < 0:
                    continue
                idx.append(k)
                cs.append(c)
                value += c * g[k]
            rep.residuals.append(Residual(m, tuple(idx), tuple(cs), value))
        reports.append(rep)
    out = RelationCheck(r, reports)
    if not any(rep.residuals for rep in reports):
        raise InsufficientCoefficients(out.skipped)
    return out


# ---------------------------------------------------------------------------
# graded elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedElement:
    degree: int
    phi: TruncatedSeries

    @property
    def gammas(self) -> tuple:
        return self.phi.coeffs


def check_functional_equation(e: GradedElement) -> tuple[bool, int | None]:
    """Compare phi(x/(x-1)) with (1-x)^r phi(x); returns (ok, first bad index)."""
    t = e.phi.truncation
    lhs = compose_mobius(e.phi)
    rhs = one_minus_x_power(e.degree, t) * e.phi
    for i in range(t + 1):
        if lhs[i] != rhs[i]:
            return False, i
    return True, None


@lru_cache(maxsize=4096)
def _basis(r: int, i: int, t: int) -> TruncatedSeries:
    """x^(2i) (x-2)^(-r-2i) to order t."""
    if 2 * i > t:
        return TruncatedSeries([0], t)
    core = binomial_power(-2, 1, -r - 2 * i, t - 2 * i)
    return TruncatedSeries([Fraction(0)] * (2 * i) + list(core.coeffs), t)


@dataclass(frozen=True)
class DeltaVector:
    degree: int
    deltas: tuple

    def __init__(self, degree: int, deltas: Sequence):
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "deltas", tuple(Q(d) for d in deltas))


class Decomposition(NamedTuple):
    delta: DeltaVector | None
    failed_at: int | None

    @property
    def ok(self) -> bool:
        return self.failed_at is None


def delta_reconstruct(dv: DeltaVector, T: int) -> GradedElement:
    """sum_i delta_i x^(2i) (x-2)^(-r-2i) to truncation T."""
    if T < 0:
        raise ValueError("truncation must be nonnegative")
    acc = TruncatedSeries([0], T)
    for i, d in enumerate(dv.deltas):
        if d and 2 * i <= T:
            acc = acc + _basis(dv.degree, i, T) * d
    return GradedElement(dv.degree, acc)


def delta_decompose(e: GradedElement) -> Decomposition:
    """Solve for the delta_i from the even coefficients, then test the odd ones."""
    r, t = e.degree, e.phi.truncation
    basis = [_basis(r, i, t) for i in range(t // 2 + 1)]
    deltas: list[Fraction] = []
    for i, b in enumerate(basis):
        s = e.phi[2 * i] - sum((deltas[j] * basis[j][2 * i] for j in range(i)), Fraction(0))
        deltas.append(s / b[2 * i])
    rec = delta_reconstruct(DeltaVector(r, deltas), t).phi
    for k in range(1, t + 1, 2):
        if rec[k] != e.phi[k]:
            return Decomposition(None, k)
    return Decomposition(DeltaVector(r, deltas), None)


def is_member(e: GradedElement, m_max: int | None = None) -> bool:
    """All three tests agree on acceptance."""
    t = e.phi.truncation
    rel = check_relations(e.gammas, e.degree, m_max or t + 1).consistent
    return rel and check_functional_equation(e)[0] and delta_decompose(e).ok


def graded_multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    return GradedElement(a.degree + b.degree, a.phi * b.phi)


def degree_from_gammas(g0, g1) -> Fraction:
    g0, g1 = Q(g0), Q(g1)
    if g0 == 0:
        raise DivisionByZero("gamma_0 is zero; degree undefined")
    return 2 * g1 / g0


# ---------------------------------------------------------------------------
# parity transforms
# ---------------------------------------------------------------------------

def odd_from_even(even_gammas: Sequence, r: int, n_max: int | None = None) -> list[Fraction]:
    """gamma_1, gamma_3, ..., gamma_(2 n_max + 1) from gamma_0, gamma_2, ..."""
    ev = [Q(x) for x in even_gammas]
    if n_max is None:
        n_max = len(ev) - 1
    if len(ev) < n_max + 1:
        raise ValueError(f"need {n_max + 1} even coefficients, got {len(ev)}")
    return [sum((unified_coeff(n, i, r) * ev[i] for i in range(n + 1)), Fraction(0))
            for n in range(n_max + 1)]


def even_from_odd(odd_gammas: Sequence, r: int, n_max: int | None = None,
                  free_gamma=None) -> list[Fraction]:
    """gamma_0, gamma_2, ..., gamma_(2 n_max) from gamma_1, gamma_3, ...

    For even r <= 0 the coefficient gamma_(-r) is not determined by the
    odd ones and must be passed as ``free_gamma``; gamma_(1-r) must be 0.
    """
    od = [Q(x) for x in odd_gammas]
    if n_max is None:
        n_max = len(od) - 1
    if len(od) < n_max + 1:
        raise ValueError(f"need {n_max + 1} odd coefficients, got {len(od)}")
    free_n = -r // 2 if r <= 0 and r % 2 == 0 else None
    if free_n is not None:
        if free_n < len(od) and od[free_n] != 0:
            raise ConstraintViolation(1 - r, od[free_n])
        if free_n <= n_max and free_gamma is None:
            raise MissingFreeCoefficient(f"gamma_{-r} is unconstrained for r = {r}; supply it")
    out = []
    for n in range(n_max + 1):
        if n == free_n:
            out.append(Q(free_gamma))
            continue
        out.append(sum((bracket_r(n, i, r) * od[i] for i in range(n + 1)), Fraction(0)))
    return out


def interleave(even: Sequence, odd: Sequence) -> list:
    out = []
    for i in range(max(len(even), len(odd))):
        if i < len(even):
            out.append(even[i])
        if i < len(odd):
            out.append(odd[i])
    return out
