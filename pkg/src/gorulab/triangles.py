"""Coefficient triangles of the F_r relation families and their rescalings.

A row labelled i lists the coefficients of gamma_i, gamma_(i+1), ...
in one relation.  Entries that would multiply gamma with a negative
subscript are dropped, which is what carves the upper-left corner out
of the even positive triangles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactnum import binomial, fmt_q, q_content
from .fgraded import FAMILY_TAGS, _ceil_half, relation_row
from .powersum import lucas_rows

PRESENTATIONS = ("raw", "gcd_reduced", "rescaled")


class WrongParityOrSign(ValueError):
    pass


class SymmetryBroken(AssertionError):
    pass


@dataclass(frozen=True)
class TriangleRow:
    start_index: int | None
    coefficients: tuple
    block: str = "main"
    family: str | None = None
    m: int | None = None

    def to_json(self) -> dict:
        out = {"start_index": self.start_index,
               "coefficients": [fmt_q(c) for c in self.coefficients],
               "block": self.block}
        if self.family:
            out["family"] = FAMILY_TAGS.get(self.family, self.family)
        if self.m is not None:
            out["m"] = self.m
        return out


@dataclass
class CoefficientTriangle:
    r: int | None
    rows: list[TriangleRow] = field(default_factory=list)
    presentation: str = "raw"
    labelled: bool = True

    def blocks(self) -> list[list[TriangleRow]]:
        out: list[list[TriangleRow]] = []
        for row in self.rows:
            if out and out[-1][0].block == row.block:
                out[-1].append(row)
            else:
                out.append([row])
        return out

    def render(self) -> str:
        return render_rows(self.blocks(), self.labelled)

    def to_json(self) -> dict:
        return {"r": self.r, "presentation": self.presentation,
                "rows": [row.to_json() for row in self.rows]}


def render_rows(blocks: Sequence[Sequence[TriangleRow]], labelled: bool = True) -> str:
    """Right-aligned columns of "p/q" cells; blocks separated by a blank line."""
    cells = [fmt_q(c) for blk in blocks for row in blk for c in row.coefficients]
    width = max((len(c) for c in cells), default=1)
    label_w = max((len(str(row.start_index)) for blk in blocks for row in blk), default=1)
    chunks = []
    for blk in blocks:
        lines = []
        for row in blk:
            body = "  ".join(fmt_q(c).rjust(width) for c in row.coefficients)
            if labelled:
                lines.append(f"{str(row.start_index).rjust(label_w)}: {body}")
            else:
                lines.append(body)
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def _row(family: str, r: int, m: int, block: str) -> TriangleRow:
    start, coeffs = relation_row(family, r, m)
    drop = max(0, -start)
    return TriangleRow(start + drop, tuple(coeffs[drop:]), block, family, m)


def _reduce(row: TriangleRow) -> TriangleRow:
    g = q_content(row.coefficients) or Fraction(1)
    return TriangleRow(row.start_index, tuple(c / g for c in row.coefficients),
                       row.block, row.family, row.m)


def emit_triangle(r: int, n_rows: int, presentation: str = "raw") -> CoefficientTriangle:
    """Relation coefficients for degree r.

    For r >= 0 the first n_rows nonempty rows are emitted.  For r < 0 the
    finite first block is always emitted whole, followed by n_rows rows of
    the infinite family.
    """
    if n_rows < 1:
        raise ValueError("n_rows must be at least 1")
    if presentation == "gcd":
        presentation = "gcd_reduced"
    if presentation == "rescaled":
        return emit_rescaled(r)
    if presentation not in ("raw", "gcd_reduced"):
        raise ValueError(f"unknown presentation {presentation!r}")
    rows: list[TriangleRow] = []
    if r < 0:
        rows += [_row("neg-first", r, m, "upper") for m in range(1, _ceil_half(-r) + 1)]
        fam = "even" if r % 2 == 0 else "neg-odd"
        rows += [_row(fam, r, m, "lower") for m in range(1, n_rows + 1)]
    else:
        fam = "even" if r % 2 == 0 else "pos-odd"
        m = 1
        main: list[TriangleRow] = []
        while len(main) < n_rows:
            row = _row(fam, r, m, "main")
            if row.coefficients:
                main.append(row)
            m += 1
        rows += main
    if presentation == "gcd_reduced":
        rows = [_reduce(row) for row in rows]
    return CoefficientTriangle(r, rows, presentation)


def _slant_check(entries: dict[tuple[int, int], Fraction], k: int):
    for (m, i), v in entries.items():
        mate = entries.get((k - i, k - m))
        if mate is not None and mate != v:
            raise SymmetryBroken(f"entry ({m},{i}) = {v} but ({k - i},{k - m}) = {mate}")


def emit_rescaled(r: int) -> CoefficientTriangle:
    """Upper block for odd negative r = 1 - 2k with the prefactor
    m!(k-m)!/(2k)! divided out, leaving (m+i)!(2k-m-i)!/((m-i)! i! (k-m)!).

    The result is invariant under (m, i) -> (k-i, k-m).
    """
    if r >= 0 or r % 2 == 0:
        raise WrongParityOrSign(f"rescaling needs odd negative r, got {r}")
    k = (1 - r) // 2
    entries = {}
    for m in range(1, k + 1):
        for i in range(m + 1):
            entries[(m, i)] = Fraction(
                factorial(m + i) * factorial(2 * k - m - i),
                factorial(m - i) * factorial(i) * factorial(k - m))
    _slant_check(entries, k)
    # consistency with the unscaled relation row
    for m in range(1, k + 1):
        _, raw = relation_row("neg-first", r, m)
        pre = Fraction(factorial(m) * factorial(k - m), factorial(2 * k))
        if any(pre * entries[(m, i)] != raw[i] for i in range(m + 1)):
            raise SymmetryBroken(f"rescaled row {m} does not match its relation")
    rows = [TriangleRow(m - 1, tuple(entries[(m, i)] for i in range(m + 1)), "upper", "neg-first", m)
            for m in range(1, k + 1)]
    return CoefficientTriangle(r, rows, "rescaled")


def emit_pascal_rescaled(k: int) -> CoefficientTriangle:
    """Pascal rows 0..k, row n scaled so that the array is symmetric.

    Row n holds the multinomials k!/((n-i)! i! (k-n)!), i.e. the even-r
    relation with m = n + 1 multiplied through by (k-1)!/((m-1)!(k-m)!)
    taken relative to Pascal row k.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    K = k + 1  # relation index of Pascal row k
    entries = {}
    for m in range(1, K + 1):
        for i in range(m):
            entries[(m, i)] = Fraction(factorial(K - 1),
                                       factorial(m - i - 1) * factorial(i) * factorial(K - m))
    # (m, i) -> (K - i, K - m) maps the relation rows onto themselves
    _slant_check(entries, K)
    for m in range(1, K + 1):
        scale = Fraction(factorial(m - 1) * factorial(K - m), factorial(K - 1))
        if any(scale * entries[(m, i)] != binomial(m - 1, i) for i in range(m)):
            raise SymmetryBroken(f"rescaled row {m} is not a multiple of Pascal row {m - 1}")
    rows = [TriangleRow(None, tuple(entries[(m, i)] for i in range(m)), "main", None, m)
            for m in range(1, K + 1)]
    return CoefficientTriangle(None, rows, "rescaled", labelled=False)


def lucas_triangle(n_rows: int) -> CoefficientTriangle:
    rows = [TriangleRow(None, tuple(Fraction(x) for x in row)) for row in lucas_rows(n_rows)]
    return CoefficientTriangle(None, rows, "raw", labelled=False)


def signed(row: Sequence) -> tuple:
    """Alternate signs, starting positive."""
    return tuple((-1) ** j * x for j, x in enumerate(row))
