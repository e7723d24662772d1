"""Multi-semi-quasi-homogeneous (msqh) deformations of a plane branch.

A deformation adds, for each level j, terms ``A_{r,s} t_j^{w} M_j(r, s)``
where (r, s) runs over lattice points strictly below the edge of the level-j
triangle and ``w = omega_j(r, s)``.  Level-1 monomials are the plain
``x^r y^s``; deeper levels use products of semi-roots given by the monomial
correspondence.  The parameters t_j are kept formal: a deformation is stored
as a map from t-exponent vectors to polynomials in (x, y).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import flint

from .algebra import Poly, X, Y
from .errors import BranchforgeError, ParseError
from .milnor import milnor_semigroup
from .semigroup import CharData, generators_from_char
from .toric import ResolutionLedger, ledger_from_char, monomial_correspondence, semiroots


def _in_triangle(j: int, r: int, s: int, c: CharData, strict: bool) -> bool:
    n, m, e = c.nseq[j - 1], c.mseq[j - 1], c.e[j]
    lhs, rhs = r * n + s * m, n * m * e
    return r >= 0 and s >= 0 and (lhs < rhs if strict else lhs <= rhs)


def omega_weight(j: int, r: int, s: int, c: CharData) -> int:
    """e_j (e_j n_j m_j - r n_j - s m_j): positive below the edge, zero on it."""
    if not 1 <= j <= c.g or not _in_triangle(j, r, s, c, strict=False):
        raise BranchforgeError(f"({r}, {s}) is outside the level-{j} triangle")
    n, m, e = c.nseq[j - 1], c.mseq[j - 1], c.e[j]
    return e * (e * n * m - r * n - s * m)


@dataclass(frozen=True)
class MsqhSpec:
    """Coefficient tables A^{(j)}_{r,s} for the levels that are deformed."""

    g: int
    levels: dict[int, dict[tuple[int, int], Fraction]] = field(default_factory=dict)

    def validate(self, c: CharData) -> None:
        if self.g != c.g:
            raise BranchforgeError(f"spec has {self.g} levels, the branch has {c.g}")
        for j, table in self.levels.items():
            if not 1 <= j <= c.g:
                raise BranchforgeError(f"level {j} out of range")
            if table and not table.get((0, 0)):
                raise BranchforgeError(f"level {j}: A_(0,0) must be nonzero")
            for (r, s) in table:
                if not _in_triangle(j, r, s, c, strict=True):
                    raise BranchforgeError(f"level {j}: ({r}, {s}) is not strictly below the edge")

    def column(self, j: int, e: int) -> list[Fraction]:
        """A^{(j)}_{0,s} for s = 0..e-1 (missing entries are zero)."""
        table = self.levels.get(j, {})
        return [Fraction(table.get((0, s), 0)) for s in range(e)]


def parse_msqh_spec(text: str) -> MsqhSpec:
    """Parse ``levels g`` followed by ``j r s p/q`` lines; '#' starts a comment."""
    g = None
    levels: dict[int, dict[tuple[int, int], Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "levels":
            if len(parts) != 2 or g is not None:
                raise ParseError(f"line {lineno}: malformed header")
            g = int(parts[1])
            continue
        if g is None:
            raise ParseError(f"line {lineno}: missing 'levels g' header")
        if len(parts) != 4 or not re.fullmatch(r"-?\d+(/\d+)?", parts[3]):
            raise ParseError(f"line {lineno}: expected 'j r s p/q'")
        try:
            j, r, s = (int(v) for v in parts[:3])
        except ValueError:
            raise ParseError(f"line {lineno}: j, r, s must be integers") from None
        table = levels.setdefault(j, {})
        if (r, s) in table:
            raise ParseError(f"line {lineno}: duplicate entry ({j}, {r}, {s})")
        table[(r, s)] = Fraction(parts[3])
    if g is None:
        raise ParseError("missing 'levels g' header")
    return MsqhSpec(g, levels)


@dataclass(frozen=True)
class MsqhDeformation:
    """sum over t-exponent vectors w of t^w * terms[w]."""

    g: int
    terms: dict[tuple[int, ...], Poly]

    def at_zero(self) -> Poly:
        return self.terms.get((0,) * self.g, Poly.constant(0))

    def specialize(self, ts: Sequence[Fraction | int]) -> Poly:
        total = Poly.constant(0)
        for w, p in self.terms.items():
            factor = Fraction(1)
            for t, a in zip(ts, w):
                factor *= Fraction(t) ** a
            total = total + p * factor
        return total

    def __str__(self) -> str:
        parts = []
        for w, p in sorted(self.terms.items()):
            mono = "*".join(f"t{j}^{a}" if a > 1 else f"t{j}" for j, a in enumerate(w, 1) if a)
            parts.append(f"({p})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def level_monomial(j: int, r: int, s: int, ledger: ResolutionLedger, roots: Sequence[Poly]) -> Poly:
    """M_j(r, s) as a polynomial: x^r y^s at level 1, a product of semi-roots beyond."""
    if j == 1:
        return X**r * Y**s
    return monomial_correspondence(j, r, s, ledger).polynomial(roots)


def build_msqh(f: Poly, c: CharData, spec: MsqhSpec, roots: Sequence[Poly] | None = None) -> MsqhDeformation:
    """Assemble the deformation of f described by spec; t = 0 gives back f."""
    spec.validate(c)
    ledger = ledger_from_char(c)
    if roots is None:
        roots = semiroots(f, ledger, c.g)
    terms: dict[tuple[int, ...], Poly] = {(0,) * c.g: f}
    for j, table in sorted(spec.levels.items()):
        for (r, s), coeff in sorted(table.items()):
            if not coeff:
                continue
            w = [0] * c.g
            w[j - 1] = omega_weight(j, r, s, c)
            key = tuple(w)
            term = level_monomial(j, r, s, ledger, roots) * coeff
            terms[key] = terms.get(key, Poly.constant(0)) + term
    return MsqhDeformation(c.g, {k: v for k, v in terms.items() if not v.is_zero()})


# genericity -------------------------------------------------------------------

def edge_polynomial(column: Sequence[Fraction | int]) -> list[Fraction]:
    """Coefficients (low to high) of q(v) = v^e + sum_{s<e} A_{0,s} v^s."""
    return [Fraction(a) for a in column] + [Fraction(1)]


def is_square_free_univariate(coeffs: Sequence[Fraction]) -> bool:
    p = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs])
    if p.degree() < 1:
        return True
    return p.gcd(p.derivative()).degree() == 0


@dataclass(frozen=True)
class LevelGenericity:
    j: int
    coefficients: tuple[Fraction, ...]
    square_free: bool


@dataclass(frozen=True)
class GenericityReport:
    levels: tuple[LevelGenericity, ...]

    @property
    def generic(self) -> bool:
        return all(l.square_free for l in self.levels)


def genericity_check(spec: MsqhSpec, c: CharData) -> GenericityReport:
    """Level j uses the A^{(j+1)}_{0,s} column; e_j = 1 levels are always generic."""
    out = []
    for j in range(1, c.g + 1):
        e_j = c.e[j]
        coeffs = edge_polynomial(spec.column(j + 1, e_j)) if j < c.g else [Fraction(0), Fraction(1)]
        out.append(LevelGenericity(j, tuple(coeffs), e_j == 1 or is_square_free_univariate(coeffs)))
    return GenericityReport(tuple(out))


def level_milnor_values(c: CharData) -> list[int]:
    """Kouchnirenko value of each level polygon plus e_j - 1."""
    out = []
    for j, (n, m) in enumerate(zip(c.nseq, c.mseq), 1):
        e = c.e[j]
        a, b = m * e, n * e
        out.append(a * b - a - b + 1 + e - 1)
    return out


def prop_milnor_identity(c: CharData) -> bool:
    return sum(level_milnor_values(c)) == milnor_semigroup(generators_from_char(c))


__all__ = [
    "omega_weight", "MsqhSpec", "parse_msqh_spec", "MsqhDeformation", "build_msqh", "level_monomial",
    "edge_polynomial", "genericity_check", "GenericityReport", "LevelGenericity", "prop_milnor_identity",
    "level_milnor_values",
]
