"""Exact computations on plane curve branches: approximate roots, semigroups,
toric resolution, Milnor numbers, equisingular families and msqh deformations."""

from .algebra import LAM, ONE, Poly, X, Y, ZERO, intersection_mult, resultant_y
from .errors import BranchforgeError, ParseError
from .irreducible import IrreducibilityReport, abhyankar_irreducible
from .milnor import milnor_lattice, milnor_resultant, milnor_semigroup
from .parser import parse
from .semigroup import CharData, SemigroupData, char_from_generators, generators_from_char

__version__ = "0.1.0"

__all__ = [
    "Poly", "X", "Y", "LAM", "ONE", "ZERO", "intersection_mult", "resultant_y",
    "BranchforgeError", "ParseError", "IrreducibilityReport", "abhyankar_irreducible",
    "milnor_lattice", "milnor_resultant", "milnor_semigroup", "parse",
    "CharData", "SemigroupData", "char_from_generators", "generators_from_char",
]
