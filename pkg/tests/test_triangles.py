from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

import reference_tables as ref
from gorulab.fgraded import DeltaVector, delta_reconstruct
from gorulab.triangles import (
    SymmetryBroken,
    TriangleRow,
    WrongParityOrSign,
    emit_pascal_rescaled,
    emit_rescaled,
    emit_triangle,
    lucas_triangle,
    render_rows,
    signed,
)


def as_blocks(table):
    return [[TriangleRow(label, tuple(Fraction(x) for x in entries.split()))
             for label, entries in block] for block in table]


def canonical(table):
    labelled = table[0][0][0] is not None
    return render_rows(as_blocks(table), labelled)


def coefficient_rows(tri):
    return [row.coefficients for row in tri.rows]


CASES = [
    (ref.LUCAS, lambda: lucas_triangle(9)),
    (ref.R8, lambda: emit_triangle(8, 6)),
    (ref.R1, lambda: emit_triangle(1, 7)),
    (ref.R9, lambda: emit_triangle(9, 7)),
    (ref.RM8, lambda: emit_triangle(-8, 4)),
    (ref.RM9, lambda: emit_triangle(-9, 3)),
    (ref.RM9_RESCALED, lambda: emit_rescaled(-9)),
    (ref.PASCAL_RESCALED_8, lambda: emit_pascal_rescaled(8)),
]


@pytest.mark.parametrize("table,make", CASES)
def test_reference_tables_render_identically(table, make):
    assert make().render() == canonical(table)


def test_raw_examples():
    tri = emit_triangle(1, 3)
    assert coefficient_rows(tri) == [(1, -2), (3, -9, 6), (10, -40, 50, -20)]
    assert coefficient_rows(emit_triangle(9, 1)) == [(9, -2)]
    tri = emit_triangle(-8, 3)
    assert tri.rows[0].coefficients == (Fraction(1, 9), Fraction(1, 36))
    lower = [row for row in tri.rows if row.block == "lower"]
    assert [row.start_index for row in lower] == [9, 10, 11]
    assert coefficient_rows(tri)[-3:] == [(1,), (1, -1), (1, -2, 1)]


def test_rendering_format():
    text = emit_triangle(1, 2).render()
    assert text == "0:  1  -2\n1:  3  -9   6\n"
    assert emit_triangle(-8, 1).render().count("\n\n") == 1


def test_rescaled_examples():
    tri = emit_rescaled(-9)
    assert tri.rows[0].coefficients == (15120, 3360)
    assert tri.rows[4].coefficients[0] == 120
    assert len(emit_rescaled(-1).rows) == 1
    for r in (1, 2, -2):
        with pytest.raises(WrongParityOrSign):
            emit_rescaled(r)


def test_pascal_rescaled_examples():
    tri = emit_pascal_rescaled(8)
    rows = coefficient_rows(tri)
    assert rows[0] == (1,) and rows[1] == (8, 8) and rows[2] == (28, 56, 28)
    assert rows[4] == (70, 280, 420, 280, 70)
    assert coefficient_rows(emit_pascal_rescaled(0)) == [(1,)]


@pytest.mark.parametrize("k", range(1, 12))
def test_rescaled_slant_symmetry(k):
    r = 1 - 2 * k
    rows = coefficient_rows(emit_rescaled(r))
    for m in range(1, k + 1):
        for i in range(m + 1):
            if k - i >= 1:
                assert rows[m - 1][i] == rows[k - i - 1][k - m]
            expect = Fraction(factorial(m + i) * factorial(2 * k - m - i),
                              factorial(m - i) * factorial(i) * factorial(k - m))
            assert rows[m - 1][i] == expect


@pytest.mark.parametrize("k", range(0, 14))
def test_pascal_rescaled_is_symmetric_multinomial_array(k):
    rows = coefficient_rows(emit_pascal_rescaled(k))
    assert len(rows) == k + 1
    for n, row in enumerate(rows):
        assert row == row[::-1]
        # each row is a multiple of the Pascal row
        assert all(x * comb(n, 0) == row[0] * comb(n, i) for i, x in enumerate(row))
        assert row == tuple(factorial(k) // (factorial(n - i) * factorial(i) * factorial(k - n))
                            for i in range(n + 1))
    # the last row is the Pascal row itself; (n, i) -> (k - i, k - n) is a symmetry
    assert rows[k] == tuple(comb(k, i) for i in range(k + 1))
    for n in range(k + 1):
        for i in range(n + 1):
            assert rows[n][i] == rows[k - i][k - n]


def test_gcd_reduction_at_r1_gives_signed_lucas():
    tri = emit_triangle(1, 7, "gcd")
    lucas = lucas_triangle(8)
    for m, row in enumerate(tri.rows, start=1):
        assert row.coefficients == signed(lucas.rows[m].coefficients)


@given(st.integers(-12, 12), st.integers(1, 6))
def test_emitted_rows_annihilate_members(r, n_rows):
    # every emitted row is a relation: it must vanish on any member of F_r
    dv = DeltaVector(r, [Fraction(j + 1, 3) for j in range(16)])
    g = delta_reconstruct(dv, 30).gammas
    for row in emit_triangle(r, n_rows).rows:
        s = sum(c * g[row.start_index + i] for i, c in enumerate(row.coefficients))
        assert s == 0


def test_lower_block_of_odd_negative_is_signed_lucas():
    tri = emit_triangle(-9, 6)
    lower = [row.coefficients for row in tri.rows if row.block == "lower"]
    lucas = lucas_triangle(7)
    for n, row in enumerate(lower, start=1):
        assert row == signed(lucas.rows[n].coefficients)


def test_bad_arguments():
    with pytest.raises(ValueError):
        emit_triangle(3, 0)
    with pytest.raises(ValueError):
        emit_triangle(3, 2, "bogus")
    with pytest.raises(ValueError):
        emit_pascal_rescaled(-1)


def test_json_shape():
    js = emit_triangle(-8, 1).to_json()
    assert js["rows"][0] == {"start_index": 0, "coefficients": ["1/9", "1/36"], "block": "upper",
                             "family": "eq1.7", "m": 1}
    assert isinstance(SymmetryBroken("x"), AssertionError)
