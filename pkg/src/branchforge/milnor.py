"""Milnor numbers by the resultant, semigroup and lattice-point formulas."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, X, intersection_mult, partial_y
from .errors import BranchforgeError, InvalidSemigroupError, NotSquareFreeError, NonCoprimeError
from .newton import LatticeTriangle, NewtonPolygon, interior_lattice_count
from .semigroup import CharData, SemigroupData, validate_plane_semigroup


def milnor_resultant(f: Poly) -> int:
    """mu = (f, f_y)_0 - (f, x)_0 + 1 for f monic in y vanishing at the origin."""
    if not f.is_monic_y():
        raise BranchforgeError("f must be monic in y")
    if f.constant_value() != 0:
        raise BranchforgeError("f does not vanish at the origin")
    try:
        polar = intersection_mult(f, partial_y(f)) if f.deg_y() > 1 else 0
    except NonCoprimeError:
        raise NotSquareFreeError("f is not reduced (discriminant vanishes)") from None
    return polar - intersection_mult(f, X) + 1


def milnor_semigroup(s: SemigroupData) -> int:
    ok = validate_plane_semigroup(s)
    if not ok:
        raise InvalidSemigroupError(ok.witness)
    return s.conductor()


@dataclass(frozen=True)
class MilnorComplex:
    """The triangles Delta_j with hypotenuse (m_j e_j, 0)-(0, n_j e_j), glued along edges of length e_j."""

    triangles: tuple[LatticeTriangle, ...]
    e: tuple[int, ...]

    @classmethod
    def from_char(cls, c: CharData) -> MilnorComplex:
        e = c.e
        tris = tuple(
            LatticeTriangle(m * e[j], n * e[j]) for j, (n, m) in enumerate(zip(c.nseq, c.mseq), 1)
        )
        return cls(tris, e)

    def lattice_points(self) -> int:
        """Interior points of the triangles plus the e_j - 1 interior points of each glued edge."""
        return sum(interior_lattice_count(t) + self.e[j] - 1 for j, t in enumerate(self.triangles, 1))


def milnor_lattice(c: CharData) -> int:
    return 2 * MilnorComplex.from_char(c).lattice_points()


def kouchnirenko_nd(p: NewtonPolygon) -> int:
    """2*area - a - b + 1 for a convenient polygon with intercepts a, b."""
    if not p.is_convenient:
        raise BranchforgeError("Kouchnirenko's formula needs a convenient polygon")
    a = p.vertices[-1][0]
    b = p.vertices[0][1]
    value = 2 * p.area_under() - a - b + 1
    return int(value)
