import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from branchforge.algebra import ONE, X, Y
from branchforge.errors import BranchforgeError
from branchforge.newton import newton_polygon, single_edge_check
from branchforge.puiseux import ord_along
from branchforge.semigroup import CharData, SemigroupData
from branchforge.toric import (LevelData, chart_pair, invert_word, lemma_dos, ledger_from_char,
                               ledger_with_thetas, monomial_correspondence, monomial_intersection,
                               semiroots, strict_transform_chain, toric_pullback)

from conftest import CUSP, QUARTIC

QUARTIC_LEDGER = ledger_from_char(CharData(4, (6, 7)))


def test_chart_pairs():
    assert chart_pair(2, 3) == (1, 1)
    assert chart_pair(2, 5) == (1, 2)
    assert chart_pair(3, 2) == (2, 1)
    assert chart_pair(2, 1) == (1, 0)
    with pytest.raises(BranchforgeError):
        chart_pair(4, 6)


@given(st.integers(1, 40), st.integers(1, 40))
def test_chart_pair_contract(n, m):
    if gcd(n, m) != 1:
        return
    c, d = chart_pair(n, m)
    assert c * m - d * n == 1 and 1 <= c <= n and d >= 0


def test_ledgers():
    rows = [(l.n, l.m, l.c, l.d) for l in QUARTIC_LEDGER.levels]
    assert rows == [(2, 3, 1, 1), (2, 1, 1, 0)]
    assert [(l.n, l.m, l.c, l.d) for l in ledger_from_char(CharData(2, (3,))).levels] == [(2, 3, 1, 1)]
    six = ledger_from_char(CharData(6, (8, 9)))
    assert [(l.n, l.m) for l in six.levels] == [(3, 4), (2, 1)]


def test_lemma_dos_examples():
    lvl = LevelData.from_pair(1, 2, 3)
    assert lemma_dos(1, 1, lvl) == (1, 2, 1)
    assert lemma_dos(2, 1, lvl) == (2, 4, 0)
    assert lemma_dos(0, 1, lvl) == (1, 3, 0)


def test_lemma_dos_laurent_identity():
    rng = random.Random(11)
    pairs = set()
    while len(pairs) < 20:
        n, m = rng.randint(1, 15), rng.randint(1, 25)
        if gcd(n, m) == 1:
            pairs.add((n, m))
    for n, m in sorted(pairs):
        lvl = LevelData.from_pair(1, n, m)
        for r in range(31):
            for l in range(1, 11):
                k, i0, i1 = lemma_dos(r, l, lvl)
                # exponents of (u, X) on both sides of (y^(l n) o pi) u^k X^r = (x^i0 y^i1) o pi
                lhs = (lvl.d * l * n + k, m * l * n + r)
                rhs = (lvl.c * i0 + lvl.d * i1, n * i0 + m * i1)
                assert lhs == rhs
                assert k > 0 and i0 > 0 and 0 <= i1 < n
                assert (i1 == 0) == (r % n == 0)


def test_quartic_words():
    w = monomial_correspondence(2, 0, 1, QUARTIC_LEDGER)
    assert (w.i, w.k) == ((3, 0, 1), (1,))
    w = monomial_correspondence(2, 1, 0, QUARTIC_LEDGER)
    assert (w.i, w.k) == ((5, 1, 0), (2,))
    w = monomial_correspondence(2, 2, 0, QUARTIC_LEDGER)
    assert (w.i, w.k) == ((7, 0, 0), (3,))
    assert w.polynomial([Y, CUSP]) == X**7


def test_quartic_intersections():
    s = SemigroupData((4, 6, 13))
    assert monomial_intersection(2, 0, 1, s) == 25
    assert monomial_intersection(2, 1, 0, s) == 26
    assert monomial_intersection(2, 0, 0, s) == 24


def _grid(ledger, j, rmax=12):
    return [(r, s) for r in range(rmax) for s in range(ledger.e[j - 1])]


def test_words_injective_and_bounded(full_corpus):
    for br in full_corpus[:40]:
        L = ledger_from_char(br.char)
        nseq = br.char.nseq
        for j in range(2, L.g + 2):
            words = {}
            for r, s in _grid(L, j):
                w = monomial_correspondence(j, r, s, L)
                assert all(k > 0 for k in w.k) and w.i[0] > 0
                assert all(0 <= w.i[l] < nseq[l - 1] for l in range(1, j))
                assert w.i[j] == s
                assert w.i not in words
                words[w.i] = (r, s)
                if j <= L.g:
                    assert invert_word(j, w.i, L, L.gens.gens) == (r, s)


def test_order_coherence(full_corpus):
    for br in full_corpus[:40]:
        L = ledger_from_char(br.char)
        roots = semiroots(br.poly, L)
        for j in range(2, L.g + 1):
            for r, s in _grid(L, j, rmax=6):
                word = monomial_correspondence(j, r, s, L)
                assert ord_along(br.param, word.polynomial(roots)) == monomial_intersection(j, r, s, L.gens)


def test_words_live_inside_the_polygon(small_corpus):
    for br in small_corpus[:20]:
        L = ledger_from_char(br.char)
        roots = semiroots(br.poly, L)
        poly = newton_polygon(br.poly)
        for j in range(2, L.g + 1):
            for r, s in _grid(L, j, rmax=5):
                support = monomial_correspondence(j, r, s, L).polynomial(roots).support()
                assert all(poly.contains_point(pt) for pt in support)
                if not (j == 2 and r == 0):
                    assert not any(poly.on_boundary(pt) for pt in support)


def test_pullback_examples():
    lvl = LevelData.from_pair(1, 2, 3)
    tr = toric_pullback(CUSP, lvl)
    assert tr.exc_exponents == (2, 6) and tr.body == ONE - Y
    tr = toric_pullback(QUARTIC, lvl)
    assert tr.exc_exponents == (4, 12)
    assert tr.body == (ONE - Y) ** 2 - 4 * Y**2 * X - Y**3 * X**2
    assert toric_pullback(X**3 * Y**2, lvl).body == ONE


def test_chain_examples():
    (level,) = strict_transform_chain(CUSP, ledger_from_char(CharData(2, (3,))))
    assert level.transform.body_on_divisor() == ONE - Y and level.theta == 1 and level.e == 1
    first, second = strict_transform_chain(QUARTIC, QUARTIC_LEDGER)
    assert first.transform.body_on_divisor() == (ONE - Y) ** 2 and first.theta == 1
    v = Y
    assert first.translated == v**2 - 4 * (1 + v) ** 2 * X - (1 + v) ** 3 * X**2
    assert newton_polygon(first.translated).vertices == ((0, 2), (1, 0))
    assert second.theta == 4
    thetas = [l.theta for l in ledger_with_thetas(QUARTIC_LEDGER, [first, second]).levels]
    assert thetas == [1, 4]


def test_chain_matches_predicted_edges(small_corpus):
    for br in small_corpus[:12]:
        c = br.char
        chain = strict_transform_chain(br.poly, ledger_from_char(c))
        for level in chain:
            j = level.j
            prev_b = c.b[j - 2] if j >= 2 else 0
            predicted = (c.e[j - 1] // c.e[j], (c.b[j - 1] - prev_b) // c.e[j], c.e[j])
            assert single_edge_check(newton_polygon(level.polynomial)) == predicted
            assert level.theta != 0
