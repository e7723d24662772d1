import random

import pytest

from branchforge.algebra import X, Y
from branchforge.corpus import random_char
from branchforge.errors import BranchforgeError, InvalidSemigroupError, NotSquareFreeError
from branchforge.milnor import (MilnorComplex, kouchnirenko_nd, milnor_lattice, milnor_resultant,
                                milnor_semigroup)
from branchforge.newton import newton_polygon, polygon_from_vertices
from branchforge.semigroup import CharData, SemigroupData, generators_from_char

from conftest import CUSP, QUARTIC


def test_resultant_formula():
    assert milnor_resultant(CUSP) == 2
    assert milnor_resultant(QUARTIC) == 16
    assert milnor_resultant(Y - X**2) == 0
    assert milnor_resultant(Y**2 - X**2) == 1
    with pytest.raises(NotSquareFreeError):
        milnor_resultant(CUSP**2)
    with pytest.raises(BranchforgeError):
        milnor_resultant(2 * Y**2 - X**3)


def test_semigroup_formula():
    assert milnor_semigroup(SemigroupData((2, 3))) == 2
    assert milnor_semigroup(SemigroupData((4, 6, 13))) == 16
    assert milnor_semigroup(SemigroupData((6, 8, 25))) == 36
    with pytest.raises(InvalidSemigroupError):
        milnor_semigroup(SemigroupData((4, 6, 12)))


def test_lattice_formula():
    assert milnor_lattice(CharData(2, (3,))) == 2
    assert milnor_lattice(CharData(4, (6, 7))) == 16
    assert milnor_lattice(CharData(1, ())) == 0
    tris = MilnorComplex.from_char(CharData(4, (6, 7))).triangles
    assert [t.hypotenuse for t in tris] == [((6, 0), (0, 4)), ((1, 0), (0, 2))]


def test_kouchnirenko():
    assert kouchnirenko_nd(newton_polygon(CUSP)) == 2
    assert kouchnirenko_nd(polygon_from_vertices([(0, 4), (6, 0)])) == 15
    assert kouchnirenko_nd(newton_polygon(Y - X)) == 0
    with pytest.raises(BranchforgeError):
        kouchnirenko_nd(newton_polygon(X * Y))


def test_semigroup_and_lattice_agree_on_random_data():
    rng = random.Random(3)
    for _ in range(200):
        c = random_char(rng, max_n=24, max_exp=90, max_g=4)
        assert milnor_lattice(c) == milnor_semigroup(generators_from_char(c))


def test_triple_agreement_on_corpus(full_corpus):
    for br in full_corpus[:50]:
        mu = milnor_resultant(br.poly)
        assert mu == milnor_semigroup(br.semigroup) == milnor_lattice(br.char)
