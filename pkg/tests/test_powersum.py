from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gorulab.fgraded import check_functional_equation, delta_decompose, is_member
from gorulab.powersum import (
    NotSymmetric,
    RowOutOfRange,
    SymmetricTriangle,
    gould_A_closed,
    gould_A_table,
    gould_Q,
    lucas_rows,
    power_sum,
    powersum_generating_element,
    verify_gould,
)


def test_power_sum_examples():
    P = SymmetricTriangle.pascal(6)
    assert power_sum(P, 4, 0) == 16
    assert power_sum(P, 4, 1) == 8
    R = SymmetricTriangle.random_symmetric(5, seed=3)
    assert power_sum(R, 5, 0) == sum(R.row(5))
    with pytest.raises(RowOutOfRange):
        power_sum(P, 7, 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_pascal_power_sums_match_sympy(n):
    k = sympy.Symbol("k", integer=True)
    P = SymmetricTriangle.pascal(n)
    for p in range(6):
        ref = sympy.summation(k ** p * sympy.binomial(n, k), (k, 0, n)) / sympy.Integer(n) ** p
        assert power_sum(P, n, p) == Fraction(str(ref))


def test_constant_triangle_generating_element():
    C = SymmetricTriangle.constant(3)
    e = powersum_generating_element(C, 1, 5)
    assert e.gammas == (2, 1, 1, 1, 1, 1)
    assert is_member(e)


def test_symmetry_is_enforced():
    with pytest.raises(NotSymmetric):
        SymmetricTriangle([[1], [1, 2]])
    with pytest.raises(ValueError):
        SymmetricTriangle([[1], [1, 2, 1]])
    assert not SymmetricTriangle.lucas(4).is_symmetric()


def test_json_round_trip():
    R = SymmetricTriangle.random_symmetric(4, seed=1)
    assert SymmetricTriangle.from_json(R.to_json()).rows == R.rows


def test_pascal_identities():
    rep = verify_gould(SymmetricTriangle.pascal(8), 8, 4)
    assert rep.ok
    assert {f: len(v) for f, v in rep.residuals.items()}["relation"] == 32


def test_hand_checked_relation_pascal_n2_m1():
    # m = 1: S_{n,0} - 2 S_{n,1} = 0 for any symmetric row
    P = SymmetricTriangle.pascal(2)
    assert power_sum(P, 2, 0) - 2 * power_sum(P, 2, 1) == 0


def test_lucas_rows():
    rows = lucas_rows(9)
    assert rows[1] == [1, 2]
    assert rows[3] == [1, 4, 5, 2]
    assert rows[8] == [1, 9, 35, 77, 105, 91, 49, 15, 2]
    for n in range(2, 9):
        for j in range(1, n):
            assert rows[n][j] == rows[n - 1][j - 1] + rows[n - 1][j]


def test_lucas_rows_are_not_symmetric_so_identities_fail():
    rep = verify_gould(SymmetricTriangle.lucas(8), 8, 4)
    assert rep.failures("relation")
    assert not rep.failures("A-recursion")
    e = powersum_generating_element(SymmetricTriangle.lucas(3), 3, 8)
    assert not check_functional_equation(e)[0]


@pytest.mark.parametrize("m", range(0, 11))
def test_A_recursion_matches_closed_form(m):
    A = gould_A_table(10)
    for i in range(m + 1):
        assert A[(i, m)] == gould_A_closed(m, i)


def test_gould_Q():
    assert gould_Q(3, 0) == 1
    assert gould_Q(3, 1) == 3 + 2
    assert gould_Q(3, 3) == 1 + 2 * 3


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_random_symmetric_triangles_satisfy_identities(seed, n_max):
    t = SymmetricTriangle.random_symmetric(n_max, seed)
    rep = verify_gould(t, n_max, 4, a_m_max=2)
    assert rep.ok
    for n in range(1, n_max + 1):
        e = powersum_generating_element(t, n, 10)
        assert check_functional_equation(e)[0]
        assert delta_decompose(e).ok


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.integers(2, 7), st.data())
def test_asymmetric_perturbation_breaks_identities(seed, n, data):
    t = SymmetricTriangle.random_symmetric(n, seed)
    k = data.draw(st.integers(0, n))
    if 2 * k == n:
        k = 0
    rows = [list(r) for r in t.rows]
    rows[n][k] += 1
    bad = SymmetricTriangle(rows, check=False)
    assert not verify_gould(bad, n, 4, a_m_max=0).ok
    assert not is_member(powersum_generating_element(bad, n, 10))
