"""Bernoulli numbers, Euler polynomials and the bracket/brace coefficients.

``bracket(n, i)`` is minus the coefficient of x^(2i-1) in E_2n(x);
``brace(n, i)`` is minus the coefficient of x^(2i) in E_(2n+1)(x).
Both are computed from closed forms in Bernoulli numbers; the
definitional extraction from Euler polynomials is kept alongside as
``bracket_from_euler``/``brace_from_euler`` so the two can be checked
against each other.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .exactnum import binomial, factorial, fmt_q

__all__ = [
    "bernoulli", "euler_polynomial", "bracket", "brace",
    "bracket_from_euler", "brace_from_euler", "f_coeff",
    "unified_coeff", "unified_coeff_via_f", "bracket_r",
    "IndexOutOfRange", "ForbiddenIndex", "IdentityReport", "verify_identities",
]


class IndexOutOfRange(ValueError):
    pass


class ForbiddenIndex(ValueError):
    pass


# ---------------------------------------------------------------------------
# memo tables
# ---------------------------------------------------------------------------

_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]
_euler: list[tuple[Fraction, ...]] = [(Fraction(1),)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (generating function t/(e^t - 1))."""
    if n < 0:
        raise ValueError("negative Bernoulli index")
    if n < len(_bern):
        return _bern[n]
    with _lock:
        # entries are appended whole, so readers never see a partial value
        while len(_bern) <= n:
            m = len(_bern)
            s = sum((binomial(m + 1, k) * _bern[k] for k in range(m)), Fraction(0))
            _bern.append(-s / (m + 1))
    return _bern[n]


def euler_polynomial(n: int) -> tuple[Fraction, ...]:
    """Ascending coefficients of E_n(x).

    Uses E_n(x) = x^n - 1/2 sum_{k<n} C(n,k) E_k(x), which follows from
    E_n(x+1) + E_n(x) = 2x^n.
    """
    if n < 0:
        raise ValueError("negative Euler polynomial index")
    if n < len(_euler):
        return _euler[n]
    with _lock:
        while len(_euler) <= n:
            m = len(_euler)
            c = [Fraction(0)] * (m + 1)
            c[m] = Fraction(1)
            for k in range(m):
                w = Fraction(binomial(m, k), 2)
                for j, e in enumerate(_euler[k]):
                    c[j] -= w * e
            _euler.append(tuple(c))
    return _euler[n]


# ---------------------------------------------------------------------------
# brackets and braces
# ---------------------------------------------------------------------------

def f_coeff(m: int) -> Fraction:
    """f_m = (4^m - 1)/m * B_2m."""
    return Fraction(4 ** m - 1, m) * bernoulli(2 * m)


@lru_cache(maxsize=None)
def bracket(n: int, i: int) -> Fraction:
    if i <= 0 or i > n:
        return Fraction(0)
    v = f_coeff(n - i + 1) * binomial(2 * n, 2 * i - 1)
    if v.denominator != 1:
        raise ArithmeticError(f"bracket({n},{i}) = {v} is not an integer")
    return v


@lru_cache(maxsize=None)
def brace(n: int, i: int) -> Fraction:
    if i < 0 or i > n:
        return Fraction(0)
    return f_coeff(n - i + 1) * binomial(2 * n + 1, 2 * i)


def bracket_from_euler(n: int, i: int) -> Fraction:
    if i <= 0 or i > n:
        return Fraction(0)
    return -euler_polynomial(2 * n)[2 * i - 1]


def brace_from_euler(n: int, i: int) -> Fraction:
    if i < 0 or i > n:
        return Fraction(0)
    return -euler_polynomial(2 * n + 1)[2 * i]


@lru_cache(maxsize=None)
def unified_coeff(n: int, i: int, r: int) -> Fraction:
    """The degree-r coefficient (n choose i)_r, by cases on sign and parity of r."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"need 0 <= i <= n, got n={n}, i={i}")
    if r % 2 == 0:
        h = r // 2
        if n >= max(0, -h):
            return bracket(h + n, h + i)
        return -bracket(-h - i, -h - n)
    h = (r - 1) // 2
    if n >= max(0, -h):
        return brace(h + n, h + i)
    return -brace(-(r + 1) // 2 - i, -(r + 1) // 2 - n)


def unified_coeff_via_f(n: int, i: int, r: int) -> Fraction:
    """Same value through f_(n-i+1) times a single binomial."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"need 0 <= i <= n, got n={n}, i={i}")
    ceil_half = -((r) // 2)  # ceil(-r/2)
    if n >= max(0, ceil_half):
        return f_coeff(n - i + 1) * binomial(r + 2 * n, r + 2 * i - 1)
    return -f_coeff(n - i + 1) * binomial(-r - 2 * i, -r - 2 * n - 1)


@lru_cache(maxsize=None)
def bracket_r(n: int, i: int, r: int) -> Fraction:
    """Coefficient of gamma_(2i+1) in gamma_2n for the even-from-odd direction."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"need 0 <= i <= n, got n={n}, i={i}")
    if 2 * n + r == 0:
        raise ForbiddenIndex(f"n = -r/2 = {n} has no formula")
    b = bernoulli(2 * (n - i))
    if n >= max(0, (-r) // 2 + 1):
        return Fraction(2, 2 * n + r) * binomial(2 * n + r, 2 * i + r) * b
    return Fraction(2, 2 * i + r) * binomial(-2 * i - r, -2 * n - r) * b


def _uc(n: int, i: int, r: int) -> Fraction:
    # zero outside 0 <= i <= n, as in sums over all integers
    if i < 0 or n < 0 or i > n:
        return Fraction(0)
    return unified_coeff(n, i, r)


def _br(n: int, i: int, r: int) -> Fraction:
    if i < 0 or n < 0 or i > n:
        return Fraction(0)
    return bracket_r(n, i, r)


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    suite: str
    residuals: list[tuple[dict, Fraction]] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return len(self.residuals)

    @property
    def failures(self) -> list[tuple[dict, Fraction]]:
        return [(p, v) for p, v in self.residuals if v != 0]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [{"params": p, "residual": fmt_q(v)} for p, v in self.failures],
        }


def lemma45_residuals(n_max: int) -> Iterable[tuple[dict, Fraction]]:
    """sum_i C(2n,2i) B_(2n-2i) bracket(i,j) is 0 for j < n and n for j = n."""
    for n in range(n_max + 1):
        for j in range(n + 1):
            s = sum((binomial(2 * n, 2 * i) * bernoulli(2 * n - 2 * i) * bracket(i, j)
                     for i in range(j, n + 1)), Fraction(0))
            yield {"n": n, "j": j}, s - (n if j == n else 0)


def moll_residuals(l_min: int, l_max: int) -> Iterable[tuple[dict, Fraction]]:
    for l in range(max(2, l_min), l_max + 1):
        s = sum((binomial(2 * l, 2 * s_) * (4 ** s_ - 1) * bernoulli(2 * s_)
                 * bernoulli(2 * (l - s_)) for s_ in range(1, l + 1)), Fraction(0))
        yield {"l": l}, s


def cubic_residual(n: int, a: int, b: int, r: int, s: int) -> Fraction:
    lhs = _uc(n - b, a, r) + _uc(n - a, b, s)
    rhs = _uc(n, a + b, r + s)
    for k in range(1, n + 1):
        ck = _uc(n, k, r + s)
        if not ck:
            continue
        for l in range(k):
            m = k - 1 - l
            rhs += ck * _uc(l, a, r) * _uc(m, b, s)
    return lhs - rhs


def cubic_residuals(n_max: int, rs: Iterable[int]) -> Iterable[tuple[dict, Fraction]]:
    rs = list(rs)
    for r in rs:
        for s in rs:
            for n in range(n_max + 1):
                for a in range(n + 1):
                    for b in range(n + 1):
                        yield ({"n": n, "alpha": a, "beta": b, "r": r, "s": s},
                               cubic_residual(n, a, b, r, s))


def positive_or_odd(r: int) -> bool:
    return r > 0 or r % 2 != 0


def quadratic_residual(n: int, a: int, b: int, r: int, s: int) -> Fraction:
    lhs = Fraction(1 if a + b == n - 1 else 0)
    for l in range(a, n + 1):
        m = n - l
        if m >= b:
            lhs += _br(l, a, r) * _br(m, b, s)
    rhs = Fraction(0)
    for k in range(n + 1):
        rhs += _br(n, k, r + s) * (_br(k - b, a, r) + _br(k - a, b, s))
    return lhs - rhs


def quadratic_residuals(n_max: int, rs: Iterable[int]) -> Iterable[tuple[dict, Fraction]]:
    rs = [r for r in rs if positive_or_odd(r)]
    for r in rs:
        for s in rs:
            for n in range(n_max + 1):
                if 2 * n == -(r + s):
                    continue
                for a in range(n + 1):
                    for b in range(n + 1):
                        yield ({"n": n, "alpha": a, "beta": b, "r": r, "s": s},
                               quadratic_residual(n, a, b, r, s))


def neg_first_binom_residuals(m_max: int, n_max: int) -> Iterable[tuple[dict, Fraction]]:
    """sum_i C(m,i) (m+i)!/(m+i-2n-1)! (-2)^(-i) = 0."""
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            s = Fraction(0)
            for i in range(max(0, 2 * n - m + 1), m + 1):
                s += (binomial(m, i) * Fraction(factorial(m + i), factorial(m + i - 2 * n - 1))
                      * Fraction(-2) ** (-i))
            yield {"m": m, "n": n}, s


def neg_first_aux_residuals(n_max: int) -> Iterable[tuple[dict, Fraction]]:
    """sum_i -brace(n,i) (-2)^(-2i) = (-2)^(-2n-1)."""
    for n in range(n_max + 1):
        s = sum((-brace(n, i) * Fraction(-2) ** (-2 * i) for i in range(n + 1)), Fraction(0))
        yield {"n": n}, s - Fraction(-2) ** (-2 * n - 1)


SUITES: dict[str, Callable[..., Iterable[tuple[dict, Fraction]]]] = {
    "lemma45": lambda b: lemma45_residuals(b.get("n_max", 20)),
    "moll": lambda b: moll_residuals(b.get("l_min", 2), b.get("l_max", 25)),
    "cubic": lambda b: cubic_residuals(b.get("n_max", 8), b.get("rs", range(-6, 7))),
    "quadratic": lambda b: quadratic_residuals(b.get("n_max", 8),
                                               b.get("rs", (1, 3, 5, -1, -3, 2, 4))),
    "proof-support": lambda b: (
        [({"identity": "neg-first-binom", **p}, v)
         for p, v in neg_first_binom_residuals(b.get("m_max", 15), b.get("n_max", 15))]
        + [({"identity": "neg-first-aux", **p}, v)
           for p, v in neg_first_aux_residuals(b.get("n_max", 15))]),
}


def verify_identities(suite: str, bounds: dict | None = None) -> IdentityReport:
    """Evaluate one identity family exactly over a parameter grid.

    Suites: ``lemma45``, ``moll``, ``cubic``, ``quadratic``,
    ``proof-support``.  ``bounds`` keys per suite: ``n_max``; ``l_min``,
    ``l_max``; ``n_max``, ``rs``; ``m_max``, ``n_max``.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return IdentityReport(suite, list(SUITES[suite](bounds or {})))
