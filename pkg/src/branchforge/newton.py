"""Newton polygons, compact faces, symbolic restrictions and lattice counting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .algebra import Poly
from .errors import BranchforgeError

Number = Union[int, Fraction]
Point = tuple[Number, Number]


def _cross(o: Point, a: Point, b: Point) -> Number:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def staircase_hull(points: Iterable[Point]) -> list[Point]:
    """Vertices of the compact boundary of conv(points + first quadrant).

    Works for integer or rational coordinates.  Vertices come sorted by
    increasing abscissa (and strictly decreasing ordinate).
    """
    pts = sorted(set(points))
    if not pts:
        return []
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    jmin = min(p[1] for p in pts)
    out = []
    for v in lower:
        out.append(v)
        if v[1] == jmin:
            break
    return out


@dataclass(frozen=True)
class Edge:
    start: tuple[int, int]
    end: tuple[int, int]

    @property
    def normal(self) -> tuple[int, int]:
        """Primitive inward normal (p, q): p*i + q*j is constant on the edge."""
        di = self.end[0] - self.start[0]
        dj = self.start[1] - self.end[1]
        g = gcd(di, dj)
        return dj // g, di // g

    @property
    def level(self) -> int:
        p, q = self.normal
        return p * self.start[0] + q * self.start[1]

    @property
    def integral_length(self) -> int:
        return gcd(self.end[0] - self.start[0], self.start[1] - self.end[1])

    def contains(self, point: tuple[int, int]) -> bool:
        p, q = self.normal
        i, j = point
        return p * i + q * j == self.level and self.start[0] <= i <= self.end[0]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[tuple[int, int], ...]

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(Edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def is_convenient(self) -> bool:
        return bool(self.vertices) and self.vertices[0][0] == 0 and self.vertices[-1][1] == 0

    def area_under(self) -> Fraction:
        """Area of the region between the polygon and the coordinate axes."""
        if not self.is_convenient:
            raise BranchforgeError("area is only defined for convenient polygons")
        area = Fraction(0)
        for (i1, j1), (i2, j2) in zip(self.vertices, self.vertices[1:]):
            area += Fraction((i2 - i1) * (j1 + j2), 2)
        return area

    def contains_point(self, point: tuple[int, int]) -> bool:
        """Whether point lies in conv(vertices) + first quadrant."""
        i, j = point
        v = self.vertices
        if i < v[0][0] or j < v[-1][1]:
            return False
        for e in self.edges:
            p, q = e.normal
            if p * i + q * j < e.level:
                return False
        return True

    def on_boundary(self, point: tuple[int, int]) -> bool:
        return point in self.vertices or any(e.contains(point) for e in self.edges)


def newton_polygon(a: Poly, pair: tuple[str, str] = ("x", "y")) -> NewtonPolygon:
    """Newton polygon of a in the chosen pair of variables.

    Other variables are treated as coefficients, so a family's polygon is the
    polygon at generic lambda.
    """
    if a.is_zero():
        raise BranchforgeError("Newton polygon of the zero polynomial")
    index = {"l": 0, "lambda": 0, "x": 1, "y": 2}
    ia, ib = index[pair[0]], index[pair[1]]
    pts = {(key[ia], key[ib]) for key in a.terms()}
    return NewtonPolygon(tuple(staircase_hull(pts)))


def symbolic_restriction(a: Poly, face: Edge | tuple[int, int]) -> Poly:
    """Sum of the terms of a supported on a compact edge or vertex of its polygon."""
    poly = newton_polygon(a)
    if isinstance(face, Edge):
        if face not in poly.edges:
            raise BranchforgeError("edge does not belong to the Newton polygon")
        keep = face.contains
    else:
        if tuple(face) not in poly.vertices:
            raise BranchforgeError("point is not a vertex of the Newton polygon")
        keep = lambda pt: pt == tuple(face)  # noqa: E731
    return Poly.from_terms({key: c for key, c in a.terms().items() if keep((key[1], key[2]))})


@dataclass(frozen=True)
class LatticeTriangle:
    """Triangle with vertices (0,0), (width,0), (0,height)."""

    width: int
    height: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise BranchforgeError("triangle sides must be positive")

    @property
    def hypotenuse(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.width, 0), (0, self.height)

    @property
    def twice_area(self) -> int:
        return self.width * self.height


def interior_lattice_count(t: LatticeTriangle) -> int:
    """Lattice points strictly inside t, by enumeration over the bounding box."""
    w, h = t.width, t.height
    count = 0
    for i in range(1, w):
        # j >= 1 with h*i + w*j < w*h
        top = (w * h - h * i - 1) // w
        if top >= 1:
            count += top
    return count


def single_edge_check(p: NewtonPolygon) -> tuple[int, int, int] | None:
    """(n, m, e) when p is one edge from (0, n*e) to (m*e, 0) with gcd(n, m) = 1."""
    if len(p.vertices) != 2:
        return None
    (i0, j0), (i1, j1) = p.vertices
    if i0 != 0 or j1 != 0:
        return None
    e = gcd(i1, j0)
    return j0 // e, i1 // e, e


def polygon_from_vertices(vertices: Sequence[tuple[int, int]]) -> NewtonPolygon:
    return NewtonPolygon(tuple(staircase_hull(vertices)))
