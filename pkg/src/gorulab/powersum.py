"""Normalized power sums over number triangles and the Gould-Carlitz identities.

For a triangle f_n(k), 0 <= k <= n, put S_{n,p} = n^-p sum_k k^p f_n(k).
When every row is symmetric, sum_p S_{n,p} x^p lies in F_1, and the
relations of F_1 become classical power-sum identities.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .eulerbernoulli import bernoulli, brace
from .exactnum import Q, binomial, fmt_q
from .fgraded import GradedElement
from .series import TruncatedSeries


class RowOutOfRange(IndexError):
    pass


class NotSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricTriangle:
    """Rows f_0, f_1, ...; row n has n + 1 entries.

    Symmetry f_n(k) = f_n(n-k) is enforced unless ``check=False``; the
    Lucas triangle, for one, is not symmetric and must be built unchecked.
    """

    rows: tuple
    name: str = "triangle"

    def __init__(self, rows: Sequence[Sequence], name: str = "triangle", check: bool = True):
        rs = tuple(tuple(Q(x) for x in row) for row in rows)
        for n, row in enumerate(rs):
            if len(row) != n + 1:
                raise ValueError(f"row {n} has {len(row)} entries, expected {n + 1}")
            if check and row != row[::-1]:
                raise NotSymmetric(f"row {n} is not symmetric")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "name", name)

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def is_symmetric(self) -> bool:
        return all(row == row[::-1] for row in self.rows)

    def row(self, n: int) -> tuple:
        if not 0 <= n < len(self.rows):
            raise RowOutOfRange(f"row {n} not in triangle of {len(self.rows)} rows")
        return self.rows[n]

    def to_json(self) -> dict:
        return {"rows": [[fmt_q(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, obj, check: bool = True) -> "SymmetricTriangle":
        return cls(obj["rows"], obj.get("name", "triangle"), check=check)

    # constructors ------------------------------------------------------
    @classmethod
    def pascal(cls, n_max: int) -> "SymmetricTriangle":
        return cls([[binomial(n, k) for k in range(n + 1)] for n in range(n_max + 1)], "pascal")

    @classmethod
    def lucas(cls, n_max: int) -> "SymmetricTriangle":
        return cls(lucas_rows(n_max + 1), "lucas", check=False)

    @classmethod
    def constant(cls, n_max: int, c=1) -> "SymmetricTriangle":
        return cls([[c] * (n + 1) for n in range(n_max + 1)], "constant")

    @classmethod
    def random_symmetric(cls, n_max: int, seed: int, bound: int = 9) -> "SymmetricTriangle":
        rng = random.Random(seed)
        rows = []
        for n in range(n_max + 1):
            half = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                    for _ in range(n // 2 + 1)]
            rows.append([half[min(k, n - k)] for k in range(n + 1)])
        return cls(rows, f"random-{seed}")


def lucas_rows(n_rows: int) -> list[list[int]]:
    """Row 0 is (2); row n, entry j is (n + j)/n * C(n, j)."""
    if n_rows < 1:
        raise ValueError("n_rows must be at least 1")
    rows = [[2]]
    for n in range(1, n_rows):
        rows.append([(n + j) * binomial(n, j) // n for j in range(n + 1)])
    return rows


def power_sum(t: SymmetricTriangle, n: int, p: int) -> Fraction:
    """S_{n,p} with 0^0 = 1."""
    if n < 1:
        raise RowOutOfRange("power sums need n >= 1")
    row = t.row(n)
    return sum((Fraction(k ** p, n ** p) * f for k, f in enumerate(row)), Fraction(0))


def powersum_generating_element(t: SymmetricTriangle, n: int, T: int) -> GradedElement:
    """sum_p S_{n,p} x^p to order T, as a candidate member of F_1."""
    return GradedElement(1, TruncatedSeries([power_sum(t, n, p) for p in range(T + 1)], T))


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def _odd_double_factorial(m: int) -> int:
    """1 * 3 * ... * (2m - 1); empty product for m = 0."""
    out = 1
    for j in range(1, m + 1):
        out *= 2 * j - 1
    return out


def carlitz_C(m: int) -> int:
    return _odd_double_factorial(m + 1)


def carlitz_G(m: int, i: int) -> Fraction:
    return 2 * _odd_double_factorial(m) * binomial(2 * m + 1, 2 * i + 1) * bernoulli(2 * m - 2 * i)


def gould_Q(m: int, i: int) -> int:
    return binomial(m, i) + 2 * binomial(m, i - 1)


def gould_A_table(m_max: int) -> dict[tuple[int, int], Fraction]:
    """A_i^m for 0 <= i <= m <= m_max from the recursion and its seeds."""
    A = {(i, i): Fraction((2 * i + 1) * 2 ** ((i + 1) // 2)) for i in range(m_max + 1)}
    for k in range(m_max):
        for i in range(k + 1):
            s = Fraction(binomial(2 * k + 3, 2 * i))
            for j in range(i, k + 1):
                s -= Fraction(binomial(2 * k + 3, 2 * j + 1), 2 ** ((j + 3) // 2)) * A[(i, j)]
            A[(i, k + 1)] = s * 2 ** ((k + 2) // 2)
    return A


def gould_A_closed(m: int, i: int) -> Fraction:
    return 2 ** ((m + 3) // 2) * brace(m, i)


@dataclass
class GouldReport:
    triangle: str
    # family -> list of ((n, m) or (m, i), residual)
    residuals: dict[str, list[tuple[tuple[int, int], Fraction]]] = field(default_factory=dict)

    def failures(self, family: str | None = None) -> list:
        fams = [family] if family else list(self.residuals)
        return [(f, at, v) for f in fams for at, v in self.residuals[f] if v != 0]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        return {
            "triangle": self.triangle,
            "ok": self.ok,
            "families": {
                f: {"checked": len(rs),
                    "failures": [{"at": list(at), "residual": fmt_q(v)} for at, v in rs if v != 0]}
                for f, rs in self.residuals.items()
            },
        }


def verify_gould(t: SymmetricTriangle, n_max: int, m_max: int, a_m_max: int = 10) -> GouldReport:
    """Evaluate the three identity families on rows 1..n_max, orders 1..m_max.

    (a) sum_i (-1)^i C(2m-1, m-i) C(m+i, i) S_{n,m+i-1} = 0
    (b) S_{n,2m+1} = sum_i {m i} S_{n,2i}
    (c) C_m S_{n,2m} = sum_i G_i^m S_{n,2i+1}
    plus the A_i^m recursion against 2^floor((m+3)/2) {m i}.
    (b) and (c) also run at m = 0.
    """
    rep = GouldReport(t.name, {"relation": [], "odd-even": [], "even-odd": [], "A-recursion": []})
    top_p = 2 * m_max + 1
    for n in range(1, n_max + 1):
        S = [power_sum(t, n, p) for p in range(top_p + 1)]
        for m in range(1, m_max + 1):
            v = sum(((-1) ** i * binomial(2 * m - 1, m - i) * binomial(m + i, i) * S[m + i - 1]
                     for i in range(m + 1)), Fraction(0))
            rep.residuals["relation"].append(((n, m), v))
        for m in range(m_max + 1):
            v = S[2 * m + 1] - sum((brace(m, i) * S[2 * i] for i in range(m + 1)), Fraction(0))
            rep.residuals["odd-even"].append(((n, m), v))
            v = carlitz_C(m) * S[2 * m] - sum((carlitz_G(m, i) * S[2 * i + 1]
                                               for i in range(m + 1)), Fraction(0))
            rep.residuals["even-odd"].append(((n, m), v))
    A = gould_A_table(a_m_max)
    for (i, m), a in sorted(A.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        rep.residuals["A-recursion"].append(((m, i), a - gould_A_closed(m, i)))
    return rep
