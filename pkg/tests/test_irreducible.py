from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchforge.algebra import Poly, X, Y
from branchforge.approot import tschirnhausen_shift
from branchforge.corpus import corpus
from branchforge.irreducible import (FormalTieError, GenNewtonPolygon, abhyankar_irreducible,
                                     formal_intersection, gen_newton_polygon, straight_expansion_analysis,
                                     straight_line_check)
from branchforge.puiseux import implicitize, is_irreducible_oracle, newton_puiseux, ord_along, param_from_coeffs
from branchforge.semigroup import CharData, generators_from_char
from branchforge.toric import ledger_from_char, semiroots

from conftest import CUSP, QUARTIC


def test_formal_intersections():
    assert formal_intersection(-X**3, [Y], [2, 3]) == 6
    assert formal_intersection(Poly.constant(1), [Y], [2, 3]) == 0
    assert formal_intersection(-4 * X**5 * Y - X**7, [Y, CUSP], [4, 6, 13]) == 26
    assert formal_intersection(Poly.constant(0), [Y], [2, 3]) is None
    with pytest.raises(FormalTieError):
        formal_intersection(X**3 + Y**2, [Y], [2, 3])


def test_generalized_polygons():
    g1 = gen_newton_polygon(CUSP, Y, [Y], [4, 6], Fraction(1, 2))
    assert g1.vertices == ((0, 6), (6, 0))
    g2 = gen_newton_polygon(QUARTIC, CUSP, [Y, CUSP], [4, 6, 13])
    assert g2.vertices == ((0, 26), (26, 0))
    power = gen_newton_polygon(Y**3, Y, [Y], [4, 6], Fraction(1, 2))
    assert power.vertices == ((0, 9),)


def test_straight_line_check():
    g1 = gen_newton_polygon(CUSP, Y, [Y], [4, 6], Fraction(1, 2))
    assert straight_line_check(g1, 2, 6, 2)
    g2 = gen_newton_polygon(QUARTIC, CUSP, [Y, CUSP], [4, 6, 13])
    assert straight_line_check(g2, 2, 13, 1)
    bent = GenNewtonPolygon((), ((0, 26), (10, 5), (26, 0)))
    assert not straight_line_check(bent, 2, 13, 1)


def test_examples():
    r = abhyankar_irreducible(QUARTIC)
    assert r.verdict == "yes" and r.semigroup.gens == (4, 6, 13)
    assert r.state.roots == [Y, CUSP] and r.state.Bbar == [4, 6, 13]
    assert [p.vertices for p in r.polygons] == [((0, 6), (6, 0)), ((0, 26), (26, 0))]
    r = abhyankar_irreducible(Y**2 - X**2)
    assert r.verdict == "no" and r.witness.condition == "E-stagnation"
    assert r.witness.detail == {"Bbar": 2, "E": 2}
    assert abhyankar_irreducible(CUSP).semigroup.gens == (2, 3)
    assert abhyankar_irreducible(Y - X**2).semigroup.gens == (1,)


def test_error_verdicts():
    assert abhyankar_irreducible(2 * Y**2 - X**3).verdict == "error"
    assert abhyankar_irreducible(CUSP**2).verdict == "error"
    assert abhyankar_irreducible(Y**2 - X**3 + 1).verdict == "error"
    # F(0, y) = y^2 - y is not a Weierstrass polynomial
    assert abhyankar_irreducible(Y**2 - Y - X**3).verdict == "error"


def test_shift_is_applied():
    r = abhyankar_irreducible((Y + X) ** 2 - X**3)
    assert r.verdict == "yes" and r.semigroup.gens == (2, 3)


def test_agrees_with_oracle_on_corpus(small_corpus):
    for br in small_corpus[:20]:
        r = abhyankar_irreducible(br.poly)
        assert r.verdict == "yes" and is_irreducible_oracle(br.poly)
        assert r.semigroup == generators_from_char(br.char)
        n, b = r.state.N, r.state.Bbar
        assert all(b[j + 1] > n[j - 1] * b[j] for j in range(1, len(n)))


def test_products_agree_with_oracle():
    branches = corpus(99, 16, max_n=4, max_exp=14)
    for a, b in zip(branches[::2], branches[1::2]):
        if a.poly == b.poly:
            continue
        product = a.poly * b.poly
        r = abhyankar_irreducible(product)
        assert r.verdict == "no" and r.witness is not None
        assert not is_irreducible_oracle(product)


@given(st.sampled_from([2, 3, -1, Fraction(1, 2), Fraction(-3, 4)]), st.integers(0, 5))
def test_scaling_invariance(c, index):
    br = corpus(17, 6, max_n=6, max_exp=20)[index]
    base = abhyankar_irreducible(br.poly)
    scaled = abhyankar_irreducible(br.poly.compose(x=c * X))
    assert scaled.verdict == base.verdict == "yes"
    assert scaled.semigroup == base.semigroup


def test_straight_analysis_quartic():
    rep = straight_expansion_analysis(QUARTIC, 2)
    assert rep.ok
    minimal = {(t.index, t.rs) for t in rep.minimal}
    assert minimal == {((0, 0, 2), None), ((5, 1, 0), (1, 0))}
    orders = {t.index: t.order for t in rep.terms}
    assert orders == {(0, 0, 2): 26, (5, 1, 0): 26, (7, 0, 0): 28}
    assert straight_expansion_analysis(CUSP, 1).ok


def test_straight_analysis_matches_oracle_orders():
    param = param_from_coeffs(6, {8: 1, 9: 1})
    f, shift = tschirnhausen_shift(implicitize(param))
    assert shift.is_zero()
    rep = straight_expansion_analysis(f, 2)
    assert rep.ok
    ledger = ledger_from_char(CharData(6, (8, 9)))
    roots = semiroots(f, ledger, 2)
    for t in rep.terms:
        word = X ** t.index[0]
        for a, h in zip(t.index[1:], roots):
            word = word * h**a
        assert ord_along(param, word) == t.order
    assert len(rep.minimal) == 2
