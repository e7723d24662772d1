"""Abhyankar's irreducibility criterion via approximate roots.

The criterion runs level by level.  At level j it computes the approximate
root F_{j+1} of degree N/E_j, forms the generalized Newton polygon of F_{j+1}
in powers of F_j, and checks that the polygon is the straight segment
between (0, T) and (T, 0) with T = N_j * B_j / E_j.  Intersection numbers
B_{j+1} = (F, F_{j+1})_0 must grow past N_j * B_j, and the gcd chain E_j
must strictly decrease until it reaches 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra import Poly, Y, intersection_mult, is_square_free
from .approot import RootSystem, approximate_root, h_adic, multi_adic, tschirnhausen_shift
from .errors import BranchforgeError, NonCoprimeError
from .newton import staircase_hull
from .semigroup import SemigroupData, char_from_generators
from .toric import ResolutionLedger, invert_word, ledger_from_char, semiroots


class FormalTieError(BranchforgeError):
    """The minimum defining a formal intersection is attained twice."""

    def __init__(self, value: Fraction, indices):
        self.value = value
        self.indices = indices
        super().__init__(f"formal intersection minimum {value} attained by {indices}")


@dataclass
class CriterionState:
    Bbar: list[int] = field(default_factory=list)
    E: list[int] = field(default_factory=list)
    N: list[int] = field(default_factory=list)
    roots: list[Poly] = field(default_factory=list)


def formal_intersection(p: Poly, roots: Sequence[Poly], bbar: Sequence[int],
                        scale: Fraction = Fraction(1)) -> Fraction | None:
    """min over expansion terms of (ord_x(alpha_I) bbar_0 + sum i_l bbar_l) * scale.

    roots are F_1..F_j and bbar is B_0..B_j.  Returns None for p = 0 and
    raises FormalTieError when the minimum is not attained exactly once.
    """
    if p.is_zero():
        return None
    expansion = multi_adic(p, RootSystem(tuple(roots)))
    values = {}
    for index, alpha in expansion.terms.items():
        w = alpha.ord_x() * bbar[0] + sum(i * b for i, b in zip(index, bbar[1:]))
        values[index] = Fraction(w) * scale
    best = min(values.values())
    hits = sorted(i for i, v in values.items() if v == best)
    if len(hits) > 1:
        raise FormalTieError(best, hits)
    return best


@dataclass(frozen=True)
class GenNewtonPolygon:
    points: tuple[tuple[Fraction, Fraction], ...]
    vertices: tuple[tuple[Fraction, Fraction], ...]


def gen_newton_polygon(p: Poly, q: Poly, roots: Sequence[Poly], bbar: Sequence[int],
                       scale: Fraction = Fraction(1)) -> GenNewtonPolygon:
    """Hull of (formal(alpha_k), (d-k) formal(q)) over the q-adic expansion of p."""
    d, dq = p.deg_y(), q.deg_y()
    if dq < 1 or d % dq:
        raise BranchforgeError("deg_y q must divide deg_y p")
    digits = h_adic(p, q)
    fq = formal_intersection(q, roots, bbar, scale)
    m = len(digits) - 1
    pts = []
    for k, alpha in enumerate(digits):
        fa = formal_intersection(alpha, roots, bbar, scale)
        if fa is not None:
            pts.append((fa, (m - k) * fq))
    return GenNewtonPolygon(tuple(pts), tuple(staircase_hull(pts)))


def straight_line_check(g: GenNewtonPolygon, n_j: int, b_j: int, e_j: int) -> bool:
    t = Fraction(n_j * b_j, e_j)
    return g.vertices == ((0, t), (t, 0))


@dataclass(frozen=True)
class Witness:
    condition: str
    level: int
    detail: dict

    def as_dict(self) -> dict:
        return {"condition": self.condition, "level": self.level, **self.detail}


@dataclass(frozen=True)
class IrreducibilityReport:
    verdict: str  # "yes", "no" or "error"
    semigroup: SemigroupData | None
    witness: Witness | None
    state: CriterionState
    polygons: tuple[GenNewtonPolygon, ...] = ()
    message: str | None = None
    prepared: Poly | None = None

    def __bool__(self) -> bool:
        return self.verdict == "yes"


def abhyankar_irreducible(f: Poly) -> IrreducibilityReport:
    """Decide irreducibility of a Weierstrass polynomial f in C{x}[y]."""
    state = CriterionState()

    def error(msg: str) -> IrreducibilityReport:
        return IrreducibilityReport("error", None, None, state, message=msg)

    if f.has_lambda():
        return error("input depends on lambda")
    if not f.is_monic_y():
        return error("input is not monic in y")
    big_n = f.deg_y()
    if big_n < 1:
        return error("input has no y")
    if f.constant_value() != 0:
        return error("input does not vanish at the origin")
    F, _ = tschirnhausen_shift(f)
    if F.compose(x=0) != Y**big_n:
        return error("not a Weierstrass polynomial: F(0, y) is not y^N")
    if not is_square_free(F):
        return error("input is not reduced (discriminant vanishes)")
    if big_n == 1:
        state.Bbar.append(1)
        state.E.append(1)
        state.roots.append(F)
        return IrreducibilityReport("yes", SemigroupData((1,)), None, state, prepared=F)

    state.Bbar.append(big_n)
    state.E.append(big_n)
    state.roots.append(Y)
    polygons = []
    try:
        b_next = intersection_mult(F, Y)
    except NonCoprimeError:
        return error("degenerate input: y divides the prepared polynomial")

    def no(condition: str, level: int, **detail) -> IrreducibilityReport:
        return IrreducibilityReport("no", None, Witness(condition, level, detail), state,
                                    tuple(polygons), prepared=F)

    j = 1
    while True:
        state.Bbar.append(b_next)
        e_prev = state.E[-1]
        e_j = gcd(e_prev, b_next)
        if e_j == e_prev:
            return no("E-stagnation", j, Bbar=b_next, E=e_j)
        state.E.append(e_j)
        n_j = e_prev // e_j
        state.N.append(n_j)
        nxt = F if e_j == 1 else approximate_root(F, big_n // e_j)
        try:
            poly = gen_newton_polygon(nxt, state.roots[-1], state.roots, state.Bbar, Fraction(1, e_j))
        except FormalTieError as exc:
            return no("formal-tie", j, value=exc.value, indices=[list(i) for i in exc.indices])
        polygons.append(poly)
        if not straight_line_check(poly, n_j, b_next, e_j):
            target = Fraction(n_j * b_next, e_j)
            return no("straight-line", j, vertices=[list(v) for v in poly.vertices],
                      expected=[[0, target], [target, 0]])
        if e_j == 1:
            return IrreducibilityReport("yes", SemigroupData(tuple(state.Bbar)), None, state,
                                        tuple(polygons), prepared=F)
        try:
            b_next = intersection_mult(F, nxt)
        except NonCoprimeError:
            return error(f"degenerate input: approximate root of level {j + 1} divides F")
        if b_next <= n_j * state.Bbar[-1]:
            return no("Bbar-ordering", j + 1, Bbar=b_next, bound=n_j * state.Bbar[-1])
        state.roots.append(nxt)
        j += 1


# straight-line analysis of an irreducible branch -------------------------

@dataclass(frozen=True)
class StraightTerm:
    index: tuple[int, ...]  # (i_0, i_1, ..., i_j)
    coefficient: Fraction
    rs: tuple[int, int] | None  # None for the leading power f_j^{e_{j-1}}
    order: int


@dataclass(frozen=True)
class StraightExpansionReport:
    j: int
    terms: tuple[StraightTerm, ...]
    minimal: tuple[StraightTerm, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def ledger_of(f: Poly) -> ResolutionLedger:
    report = abhyankar_irreducible(f)
    if report.verdict != "yes":
        raise BranchforgeError("input is not an irreducible Weierstrass polynomial")
    return ledger_from_char(char_from_generators(report.semigroup))


def straight_expansion_analysis(f: Poly, j: int, ledger: ResolutionLedger | None = None) -> StraightExpansionReport:
    """Classify the (x, f_1, ..., f_j)-expansion terms of an irreducible f by (r, s) and order."""
    ledger = ledger or ledger_of(f)
    g = ledger.g
    if not 1 <= j <= max(g, 1):
        raise BranchforgeError(f"level {j} outside 1..{g}")
    e, gens = ledger.e, ledger.gens.gens
    roots = semiroots(f, ledger, j)
    expansion = multi_adic(f, RootSystem(tuple(roots)))
    lead = (0,) * j
    lead = lead[:-1] + (e[j - 1],)
    terms, violations = [], []
    delta = gens[j] - (ledger.levels[j - 2].n * gens[j - 1] if j >= 2 else 0)
    for i0, index, coeff in expansion.monomials():
        word = (i0,) + index
        order = sum(a * b for a, b in zip(word, gens))
        c = coeff.constant_value()
        if i0 == 0 and index == lead:
            terms.append(StraightTerm(word, c, None, order))
            continue
        if j == 1:
            rs = (i0, index[0])
        else:
            rs = invert_word(j, word, ledger, gens)
        terms.append(StraightTerm(word, c, rs, order))
        if rs is None:
            violations.append(f"term {word} is not a monomial M_{j}(r, s)")
            continue
        r, s = rs
        if j >= 2:
            if r <= 0:
                violations.append(f"term {word}: r = {r} is not positive")
            if not s < e[j - 1]:
                violations.append(f"term {word}: s = {s} out of range")
            if r * e[j - 1] + s * delta < e[j - 1] * delta:
                violations.append(f"term {word}: ({r}, {s}) lies below the edge")
    best = min(t.order for t in terms)
    minimal = tuple(t for t in terms if t.order == best)
    if j >= 2:
        balanced = [t for t in minimal if t.rs == (delta, 0)]
        if not any(t.rs is None for t in minimal) or not balanced:
            violations.append("minimal terms miss the leading power or the balanced monomial")
        if j == g and len(minimal) != 2:
            violations.append(f"expected exactly two minimal terms at the last level, got {len(minimal)}")
    return StraightExpansionReport(j, tuple(terms), minimal, tuple(violations))
