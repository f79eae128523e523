"""Truncated power series, Laurent data at t = 1, and rational functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import (
    DivisionByZero,
    Q,
    binomial,
    fmt_q,
    gen_binomial,
    is_zero,
    poly_compose_affine,
    poly_divmod,
    poly_gcd,
    poly_trim,
    q_content,
)

DEFAULT_TRUNCATION = 24


class NotExpandable(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_T x^T + O(x^(T+1))."""

    coeffs: tuple
    truncation: int

    def __init__(self, coeffs: Sequence, truncation: int | None = None):
        c = [Q(x) if isinstance(x, (int, str)) else x for x in coeffs]
        if truncation is None:
            truncation = len(c) - 1
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        c = c[: truncation + 1] + [Fraction(0)] * (truncation + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "truncation", truncation)

    @classmethod
    def monomial(cls, k: int, truncation: int, c=1) -> "TruncatedSeries":
        coeffs = [Fraction(0)] * (truncation + 1)
        if k <= truncation:
            coeffs[k] = Q(c) if isinstance(c, int) else c
        return cls(coeffs, truncation)

    def __getitem__(self, i: int):
        if i < 0 or i > self.truncation:
            raise IndexError(i)
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, t: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: t + 1], min(t, self.truncation))

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not is_zero(c):
                return i
        return None

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.truncation)

    def __add__(self, other):
        return series_arith(self, self._lift(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return series_arith(self, self._lift(other), "sub")

    def __rsub__(self, other):
        return series_arith(self._lift(other), self, "sub")

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.truncation)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_arith(self, other, "mul")
        return TruncatedSeries([c * other for c in self.coeffs], self.truncation)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return series_arith(self, self._lift(other), "div")

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner); inner must have zero constant term."""
        if not is_zero(inner.coeffs[0]):
            raise ValueError("inner series must have zero constant term")
        t = min(self.truncation, inner.truncation)
        acc = TruncatedSeries([self.coeffs[t]], t)
        for c in reversed(self.coeffs[:t]):
            acc = acc * inner + TruncatedSeries([c], t)
        return acc

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "coeffs": [fmt_q(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "TruncatedSeries":
        return cls([Q(c) for c in obj["coeffs"]], int(obj["truncation"]))


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """Exact add/sub/mul/div at the smaller of the two truncations."""
    t = min(a.truncation, b.truncation)
    x, y = a.coeffs[: t + 1], b.coeffs[: t + 1]
    if op == "add":
        return TruncatedSeries([p + q for p, q in zip(x, y)], t)
    if op == "sub":
        return TruncatedSeries([p - q for p, q in zip(x, y)], t)
    if op == "mul":
        out = []
        for n in range(t + 1):
            s = Fraction(0)
            for i in range(n + 1):
                if not is_zero(x[i]) and not is_zero(y[n - i]):
                    s = s + x[i] * y[n - i]
            out.append(s)
        return TruncatedSeries(out, t)
    if op == "div":
        if is_zero(y[0]):
            raise DivisionByZero("series division by a series with zero constant term")
        inv0 = 1 / y[0] if not isinstance(y[0], int) else Fraction(1, y[0])
        out = []
        for n in range(t + 1):
            s = x[n]
            for i in range(1, n + 1):
                if not is_zero(y[i]):
                    s = s - y[i] * out[n - i]
            out.append(s * inv0)
        return TruncatedSeries(out, t)
    raise ValueError(f"unknown op {op!r}")


def one_minus_x_power(r: int, truncation: int) -> TruncatedSeries:
    """(1 - x)^r; generalized binomial series for negative r."""
    return TruncatedSeries(
        [gen_binomial(r, k) * (-1) ** k for k in range(truncation + 1)], truncation)


def binomial_power(c0, c1, r: int, truncation: int) -> TruncatedSeries:
    """(c0 + c1 x)^r for rational c0 != 0."""
    c0, c1 = Q(c0), Q(c1)
    ratio = c1 / c0
    lead = c0 ** r
    return TruncatedSeries(
        [lead * gen_binomial(r, k) * ratio ** k for k in range(truncation + 1)], truncation)


def mobius_inner(truncation: int) -> TruncatedSeries:
    """x/(x-1) = -x - x^2 - ..."""
    return TruncatedSeries([Fraction(0)] + [Fraction(-1)] * truncation, truncation)


def compose_mobius(phi: TruncatedSeries) -> TruncatedSeries:
    """phi(x/(x-1)) to the truncation of phi.

    Uses [x^n] (x/(x-1))^k = (-1)^k C(n-1, k-1) rather than a general
    composition, which keeps this quadratic in the truncation.
    """
    t, c = phi.truncation, phi.coeffs
    out = [c[0]]
    for n in range(1, t + 1):
        out.append(sum(((-1) ** k * binomial(n - 1, k - 1) * c[k] for k in range(1, n + 1)),
                       Fraction(0)))
    return TruncatedSeries(out, t)


# ---------------------------------------------------------------------------
# rational functions and Laurent expansion at t = 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """num(t)/den(t), ascending coefficients, normalized.

    The common polynomial gcd is cancelled, both sides are scaled to
    coprime integer coefficients, and the lowest nonzero coefficient of
    the denominator is positive.
    """

    num: tuple
    den: tuple

    def __init__(self, num: Sequence, den: Sequence, reduce: bool = True):
        n = poly_trim([Q(c) for c in num])
        d = poly_trim([Q(c) for c in den])
        if not d:
            raise DivisionByZero("zero denominator")
        if reduce and n:
            g = poly_gcd(n, d)
            if len(g) > 1:
                n = poly_divmod(n, g)[0]
                d = poly_divmod(d, g)[0]
        if not n:
            d = [Fraction(1)]
        # clear denominators and common content in one scale factor
        scale = q_content(n + d)
        lowest = next(c for c in d if c)
        if lowest < 0:
            scale = -scale
        n = [c / scale for c in n]
        d = [c / scale for c in d]
        object.__setattr__(self, "num", tuple(n))
        object.__setattr__(self, "den", tuple(d))

    @property
    def a_invariant(self) -> int:
        """deg(num) - deg(den)."""
        if not self.num:
            raise ValueError("a-invariant of the zero function")
        return (len(self.num) - 1) - (len(self.den) - 1)

    def taylor(self, truncation: int) -> TruncatedSeries:
        """Expansion at t = 0; the denominator must not vanish there."""
        return (TruncatedSeries(list(self.num), truncation)
                / TruncatedSeries(list(self.den), truncation))

    def to_json(self) -> dict:
        return {"num": [fmt_q(c) for c in self.num], "den": [fmt_q(c) for c in self.den]}

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        return cls([Q(c) for c in obj["num"]], [Q(c) for c in obj["den"]])

    def __str__(self):
        return f"({_poly_str(self.num)}) / ({_poly_str(self.den)})"


def _poly_str(p: Sequence, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = fmt_q(mag) if (not mono or mag != 1) else ""
        term = body + ("*" if body and mono else "") + mono
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts)


@dataclass(frozen=True)
class LaurentAtOne:
    """sum_i gammas[i] * (1 - t)^(i - pole_order)."""

    pole_order: int
    gammas: tuple

    def __init__(self, pole_order: int, gammas: Sequence):
        if pole_order < 0:
            raise ValueError("pole order must be nonnegative")
        object.__setattr__(self, "pole_order", pole_order)
        object.__setattr__(self, "gammas", tuple(Q(g) for g in gammas))

    def to_json(self) -> dict:
        return {"pole_order": self.pole_order, "gammas": [fmt_q(g) for g in self.gammas]}

    @classmethod
    def from_json(cls, obj) -> "LaurentAtOne":
        return cls(int(obj["pole_order"]), [Q(g) for g in obj["gammas"]])

    def taylor_at_zero(self, truncation: int) -> TruncatedSeries:
        """Re-expand sum gamma_i (1-t)^(i-d) around t = 0.

        Only meaningful as a check against a Taylor expansion when the
        gamma list is long enough; the tail beyond the stored gammas is
        treated as zero.
        """
        acc = TruncatedSeries([0], truncation)
        for i, g in enumerate(self.gammas):
            if g:
                acc = acc + one_minus_x_power(i - self.pole_order, truncation) * g
        return acc


def _x_valuation(p: Sequence) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("zero polynomial has no valuation")


def rational_to_laurent(f: RationalFunction, K: int) -> LaurentAtOne:
    """Expand f in powers of (1 - t) and return gamma_0..gamma_K.

    Substitutes t = 1 - x, strips the exact power x^d from the
    denominator, and divides.  A zero of f at t = 1 (which would make d
    negative) is returned as a d = 0 expansion with leading zeros.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    if not f.num:
        return LaurentAtOne(0, [Fraction(0)] * (K + 1))
    p = poly_compose_affine(list(f.num), Fraction(1), Fraction(-1))
    q = poly_compose_affine(list(f.den), Fraction(1), Fraction(-1))
    vp, vq = _x_valuation(p), _x_valuation(q)
    d = max(0, vq - vp)
    # phi(x) = x^d * p(x) / q(x) = x^(d + vp - vq) * (p / x^vp) / (q / x^vq)
    shift = d + vp - vq
    num = TruncatedSeries([Fraction(0)] * shift + p[vp:], K)
    den = TruncatedSeries(q[vq:], K)
    return LaurentAtOne(d, (num / den).coeffs)


def laurent_to_phi(h: LaurentAtOne) -> TruncatedSeries:
    """phi(x) = x^d H(1 - x): the gammas become power series coefficients."""
    return TruncatedSeries(list(h.gammas), len(h.gammas) - 1)
