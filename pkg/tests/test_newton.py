from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from branchforge.algebra import Poly, X, Y
from branchforge.errors import BranchforgeError
from branchforge.newton import (Edge, LatticeTriangle, interior_lattice_count, newton_polygon,
                                polygon_from_vertices, single_edge_check, staircase_hull,
                                symbolic_restriction)

from conftest import CUSP, QUARTIC


def test_polygon_examples():
    p = newton_polygon(CUSP)
    assert p.vertices == ((0, 2), (3, 0))
    assert p.edges[0].normal == (2, 3)
    q = newton_polygon(QUARTIC)
    assert q.vertices == ((0, 4), (6, 0))
    assert q.edges[0].normal == (2, 3)
    m = newton_polygon(X**5 * Y)
    assert m.vertices == ((5, 1),) and m.edges == ()


def test_restriction_examples():
    edge = newton_polygon(QUARTIC).edges[0]
    assert symbolic_restriction(QUARTIC, edge) == CUSP**2
    g = CUSP + X**4
    assert symbolic_restriction(g, newton_polygon(g).edges[0]) == CUSP
    mono = 3 * X**2 * Y
    assert symbolic_restriction(mono, (2, 1)) == mono
    with pytest.raises(BranchforgeError):
        symbolic_restriction(QUARTIC, Edge((0, 4), (5, 0)))


def test_lattice_examples():
    assert interior_lattice_count(LatticeTriangle(3, 2)) == 1
    assert interior_lattice_count(LatticeTriangle(6, 4)) == 7
    assert interior_lattice_count(LatticeTriangle(1, 2)) == 0


def test_single_edge_examples():
    assert single_edge_check(newton_polygon(CUSP)) == (2, 3, 1)
    assert single_edge_check(newton_polygon(QUARTIC)) == (2, 3, 2)
    two = newton_polygon(Y**4 - X**3 * Y - X**5)
    assert two.vertices == ((0, 4), (3, 1), (5, 0))
    assert single_edge_check(two) is None


def test_area_and_membership():
    p = newton_polygon(QUARTIC)
    assert p.area_under() == 12
    assert p.contains_point((5, 1)) and p.on_boundary((3, 2))
    assert not p.contains_point((2, 1))


def test_hull_accepts_rationals():
    pts = [(Fraction(0), Fraction(13, 2)), (Fraction(13, 2), Fraction(0)), (Fraction(4), Fraction(4))]
    assert staircase_hull(pts) == [pts[0], pts[1]]


point_sets = st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=6)


def _poly(points):
    return Poly.from_terms({p: 1 for p in points})


@given(point_sets, point_sets)
def test_product_polygon_is_minkowski_sum(a, b):
    pa, pb = newton_polygon(_poly(a)), newton_polygon(_poly(b))
    summed = polygon_from_vertices([(u[0] + v[0], u[1] + v[1]) for u in pa.vertices for v in pb.vertices])
    assert newton_polygon(_poly(a) * _poly(b)) == summed


@given(st.integers(1, 30), st.integers(1, 30))
def test_pick(w, h):
    t = LatticeTriangle(w, h)
    boundary = w + h + gcd(w, h)
    # 2*Area = 2I + B - 2
    assert t.twice_area == 2 * interior_lattice_count(t) + boundary - 2


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 3), st.integers(-3, 3).filter(bool), point_sets)
def test_edge_restriction_is_quasi_homogeneous(n, m, e, c, extra):
    n, m = n // gcd(n, m), m // gcd(n, m)
    base = (Y**n + c * X**m) ** e
    # add terms strictly above the edge
    above = _poly({(i + m * e, j + 1) for i, j in extra})
    f = base + above
    poly = newton_polygon(f)
    assert single_edge_check(poly) == (n, m, e)
    r = symbolic_restriction(f, poly.edges[0])
    assert r == base
    p, q = poly.edges[0].normal
    assert {p * i + q * j for (i, j) in r.xy_terms()} == {poly.edges[0].level}
