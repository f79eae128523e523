import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gorulab.exactnum import CycloNumber, embed_root
from gorulab.molien import (
    EigenvaluesUnavailable,
    GroupElement,
    OrderExceeded,
    det_one_minus_tg,
    gorenstein_screen,
    group_closure,
    group_from_json,
    group_to_json,
    generators_from_json,
    identity,
    molien_series,
    pseudoreflection_count,
    stratified_gammas,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def order12():
    return group_from_json(load("order12_group.json"))


def cyc(n, x):
    return CycloNumber(n, [x])


def mat(rows, order=1):
    return GroupElement.from_matrix([[cyc(order, x) for x in row] for row in rows], order)


def invariant_monomial_counts(gens, dim, order, top):
    """Dimensions of the invariant ring of a diagonal group, by brute force."""
    out = []
    for d in range(top + 1):
        n = 0
        for a in itertools.product(range(d + 1), repeat=dim):
            if sum(a) == d and all(sum(x * e for x, e in zip(a, g)) % order == 0 for g in gens):
                n += 1
        out.append(n)
    return out


def sympy_taylor(expr_num, expr_den, top):
    t = sympy.Symbol("t")
    ref = sympy.series(expr_num / expr_den, t, 0, top + 1).removeO()
    return [Fraction(str(ref.coeff(t, k))) for k in range(top + 1)]


# closure

def test_order_twelve_group_and_strata():
    G = order12()
    assert G.order == 12
    assert G.stratum_sizes() == {4: 1, 3: 1, 2: 1, 1: 5, 0: 4}
    assert pseudoreflection_count(G) == 1


def test_small_closures():
    assert group_closure([identity(2)]).order == 1
    G = group_closure([GroupElement.diagonal(2, [1, 1])])
    assert G.order == 2
    assert sorted(g.fixed_dim() for g in G.elements) == [0, 2]


def test_order_cap():
    with pytest.raises(OrderExceeded):
        group_closure([GroupElement.diagonal(7, [1]), GroupElement.diagonal(5, [1])], max_order=20)


@settings(max_examples=25)
@given(st.integers(1, 6), st.lists(st.lists(st.integers(0, 5), min_size=2, max_size=2),
                                   min_size=1, max_size=3), st.randoms())
def test_closure_independent_of_generator_order(N, exps, rnd):
    gens = [GroupElement.diagonal(N, e) for e in exps]
    shuffled = gens[:]
    rnd.shuffle(shuffled)
    a, b = group_closure(gens), group_closure(shuffled)
    assert set(a.elements) == set(b.elements)


def test_diagonal_and_matrix_forms_hash_alike():
    d = GroupElement.diagonal(4, [1, 3])
    m = GroupElement.from_matrix([[embed_root(4, 1), cyc(4, 0)], [cyc(4, 0), embed_root(4, 3)]], 4)
    assert d == m and hash(d) == hash(m)


# molien series

def test_order_twelve_molien_matches_monomial_count():
    G = order12()
    lau, rf = molien_series(G, 3)
    counts = invariant_monomial_counts([[1, 2, 1, 0], [0, 0, 0, 3]], 4, 6, 12)
    assert rf.taylor(12).coeffs == tuple(counts)
    assert counts == [1, 0, 1, 1, 4, 6, 12, 9, 17, 17, 29, 33, 50]
    # leading Laurent coefficients: 1/|G| and half the pseudoreflection share
    assert lau.pole_order == 4
    assert lau.gammas[:3] == (Fraction(1, 12), Fraction(1, 24), Fraction(1, 24))


def test_order_twelve_gamma3_matches_sympy_expansion():
    t, s = sympy.symbols("t s")
    _, rf = molien_series(order12(), 3)
    num = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(rf.num))
    den = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(rf.den))
    ref = sympy.series(sympy.cancel((num / den).subs(t, 1 - s) * s ** 4), s, 0, 4).removeO()
    lau, _ = molien_series(order12(), 3)
    assert list(lau.gammas) == [Fraction(str(ref.coeff(s, k))) for k in range(4)]


def test_trivial_and_sign_groups():
    lau, rf = molien_series(group_closure([identity(1)]), 2)
    assert rf.num == (1,) and rf.den == (1, -1)
    assert lau.gammas == (1, 0, 0)
    lau, rf = molien_series(group_closure([GroupElement.diagonal(2, [1])]), 2)
    assert lau.gammas == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
    assert rf.taylor(6).coeffs == (1, 0, 1, 0, 1, 0, 1)


def test_minus_identity_dim2():
    G = group_from_json(load("minus_identity_dim2.json"))
    _, rf = molien_series(G, 4)
    t = sympy.Symbol("t")
    assert list(rf.taylor(10).coeffs) == sympy_taylor(1 + t ** 2, (1 - t ** 2) ** 2, 10)


def test_symmetric_group_permutation_matrices():
    G = group_from_json(load("s3_permutations.json"))
    assert G.order == 6
    _, rf = molien_series(G, 4)
    t = sympy.Symbol("t")
    assert list(rf.taylor(12).coeffs) == sympy_taylor(1, (1 - t) * (1 - t ** 2) * (1 - t ** 3), 12)


def test_rotation_matrix_agrees_with_its_diagonal_form():
    rot = group_closure([mat([[0, -1], [1, 0]])])
    diag = group_closure([GroupElement.diagonal(4, [1, 3])])
    assert rot.order == diag.order == 4
    assert molien_series(rot, 5)[1] == molien_series(diag, 5)[1]


def test_dihedral_group_of_the_square():
    G = group_closure([mat([[0, -1], [1, 0]]), mat([[1, 0], [0, -1]])])
    assert G.order == 8
    t = sympy.Symbol("t")
    _, rf = molien_series(G, 3)
    assert list(rf.taylor(12).coeffs) == sympy_taylor(1, (1 - t ** 2) * (1 - t ** 4), 12)
    assert pseudoreflection_count(G) == 4


@settings(max_examples=25)
@given(st.integers(1, 6), st.integers(1, 3), st.data())
def test_diagonal_groups_match_monomial_count(N, dim, data):
    exps = data.draw(st.lists(st.lists(st.integers(0, N - 1), min_size=dim, max_size=dim),
                              min_size=1, max_size=2))
    G = group_closure([GroupElement.diagonal(N, e) for e in exps])
    _, rf = molien_series(G, 2)
    top = 8
    taylor = rf.taylor(top).coeffs
    assert all(c.denominator == 1 and c >= 0 for c in taylor)
    assert list(taylor) == invariant_monomial_counts(exps, dim, N, top)


def test_det_one_minus_tg():
    g = mat([[0, 1], [1, 0]])
    assert [c for c in det_one_minus_tg(g.matrix)] == [1, 0, -1]


# stratified gammas

def test_stratified_leading_terms():
    G = order12()
    g = stratified_gammas(G, 1)
    assert g == [Fraction(1, 12), Fraction(1, 24)]
    assert stratified_gammas(group_closure([identity(3)]), 3) == [1, 0, 0, 0]


@pytest.mark.parametrize("name", ["order12_group.json", "minus_identity_dim2.json"])
def test_stratified_equals_molien_diagonal(name):
    G = group_from_json(load(name))
    K = 6
    assert stratified_gammas(G, K) == list(molien_series(G, K)[0].gammas)


def test_stratified_equals_molien_with_derived_spectra():
    for G in (group_from_json(load("s3_permutations.json")),
              group_closure([mat([[0, -1], [1, 0]]), mat([[1, 0], [0, -1]])])):
        K = 5
        assert stratified_gammas(G, K, derive_spectra=True) == list(molien_series(G, K)[0].gammas)


def test_missing_spectrum_is_reported():
    G = group_closure([mat([[0, -1], [1, 0]])])
    with pytest.raises(EigenvaluesUnavailable):
        stratified_gammas(G, 3)
    # gamma_0 only needs the identity
    assert stratified_gammas(G, 0) == [Fraction(1, 4)]


def test_supplied_spectrum_is_used():
    rot = GroupElement.from_matrix([[cyc(4, 0), cyc(4, -1)], [cyc(4, 1), cyc(4, 0)]], 4,
                                   spectrum=[1, 3])
    G = group_closure([rot])
    assert stratified_gammas(G, 4) == list(molien_series(G, 4)[0].gammas)


@settings(max_examples=20)
@given(st.integers(2, 6), st.integers(1, 3), st.data())
def test_gamma0_gamma1_formulas(N, dim, data):
    exps = data.draw(st.lists(st.lists(st.integers(0, N - 1), min_size=dim, max_size=dim),
                              min_size=1, max_size=2))
    G = group_closure([GroupElement.diagonal(N, e) for e in exps])
    lau, _ = molien_series(G, 4)
    assert lau.gammas[0] == Fraction(1, G.order)
    assert lau.gammas[1] == Fraction(G.stratum_sizes().get(dim - 1, 0), 2 * G.order)
    assert stratified_gammas(G, 4) == list(lau.gammas)
    for g in G.elements:
        assert g.fixed_dim() == sum(1 for k in g.exponents if k % g.order == 0)


# screening

def test_screen_order_twelve():
    rep = gorenstein_screen(order12(), K=3)
    assert rep.r == 1
    assert not rep.gorenstein_possible
    assert rep.verdict == "not-gorenstein"
    # the certificate is evaluated on the computed coefficients
    assert rep.certificate.m == 2
    assert rep.certificate.render() == "γ_1 - 3γ_2 + 2γ_3 = -1/9"


def test_screen_special_linear_groups_are_consistent():
    rep = gorenstein_screen(group_from_json(load("minus_identity_dim2.json")), m_max=6)
    assert rep.gorenstein_possible and rep.r == 0
    assert rep.consistent_up_to == 6
    rep = gorenstein_screen(group_closure([identity(3)]), m_max=5)
    assert rep.gorenstein_possible and rep.r == 0
    assert rep.verdict == "consistent-up-to-5"


def test_screen_reflection_groups_are_consistent():
    rep = gorenstein_screen(group_from_json(load("s3_permutations.json")), m_max=5)
    assert rep.r == 3 and rep.gorenstein_possible


def test_json_round_trip():
    gens = generators_from_json(load("order12_group.json"))
    again = generators_from_json(group_to_json(gens))
    assert group_closure(gens).elements == group_closure(again).elements
    obj = {"dim": 2, "cyclo_order": 4,
            "generators": [{"matrix": [[0, -1], [1, 0]], "spectrum": [1, 3]}]}
    G = group_from_json(obj)
    assert stratified_gammas(G, 2) == list(molien_series(G, 2)[0].gammas)
