"""Toric resolution data: chart exponents, pullbacks, strict transforms and monomial words.

At level j the chart is ``x = u^c X^n``, ``y = u^d X^m`` with ``c*m - d*n = 1``.
Pulled-back polynomials are stored with X in the x-slot and u in the y-slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra import ONE, Poly, X, Y
from .approot import approximate_root
from .errors import BranchforgeError, NotIrreducibleError
from .newton import newton_polygon, single_edge_check
from .semigroup import CharData, SemigroupData, generators_from_char


def chart_pair(n: int, m: int) -> tuple[int, int]:
    """The (c, d) with 1 <= c <= n, c*m - d*n = 1."""
    if n < 1 or m < 1 or gcd(n, m) != 1:
        raise BranchforgeError(f"chart exponents ({n}, {m}) must be coprime positive integers")
    c = pow(m, -1, n) if n > 1 else 1
    c = c or n
    return c, (c * m - 1) // n


@dataclass(frozen=True)
class LevelData:
    j: int
    n: int
    m: int
    c: int
    d: int
    theta: Fraction | None = None

    @classmethod
    def from_pair(cls, j: int, n: int, m: int, theta: Fraction | None = None) -> LevelData:
        c, d = chart_pair(n, m)
        return cls(j, n, m, c, d, theta)


@dataclass(frozen=True)
class ResolutionLedger:
    levels: tuple[LevelData, ...]
    gens: SemigroupData
    e: tuple[int, ...]

    @property
    def g(self) -> int:
        return len(self.levels)

    def level(self, j: int) -> LevelData:
        return self.levels[j - 1]


def ledger_from_char(c: CharData) -> ResolutionLedger:
    levels = tuple(LevelData.from_pair(j, n, m) for j, (n, m) in enumerate(zip(c.nseq, c.mseq), 1))
    return ResolutionLedger(levels, generators_from_char(c), c.e)


def ledger_from_pairs(nseq: Sequence[int], mseq: Sequence[int], e: Sequence[int],
                      gens: SemigroupData | None = None) -> ResolutionLedger:
    """Ledger for scaled data (used by the family criterion)."""
    levels = tuple(LevelData.from_pair(j, n, m) for j, (n, m) in enumerate(zip(nseq, mseq), 1))
    return ResolutionLedger(levels, gens if gens is not None else SemigroupData(tuple(e[:1])), tuple(e))


def lemma_dos(r: int, l: int, lvl: LevelData) -> tuple[int, int, int]:
    """(k, i_0, i_1) with (y^(l n) o pi) u^k X^r = (x^(i_0) y^(i_1)) o pi."""
    if r < 0 or l <= 0:
        raise BranchforgeError("need r >= 0 and l > 0")
    q = (lvl.c * r) // lvl.n
    k = l + q
    return k, k * lvl.m - r * lvl.d, lvl.c * r - lvl.n * q


@dataclass(frozen=True)
class MonomialWord:
    """Exponents of M_j(r,s) = x^{i_0} f_1^{i_1} ... f_j^{i_j} and the unit exponents k_2..k_j."""

    j: int
    r: int
    s: int
    i: tuple[int, ...]
    k: tuple[int, ...]

    def polynomial(self, roots: Sequence[Poly]) -> Poly:
        """Concrete product, with roots = (f_1, ..., f_j)."""
        out = X ** self.i[0]
        for exp, root in zip(self.i[1:], roots):
            out = out * root**exp
        return out


def _word(levels: Sequence[LevelData], e: Sequence[int], j: int, r: int, s: int):
    if j == 2:
        k, i0, i1 = lemma_dos(r, e[1] - s, levels[0])
        return [k], [i0, i1, s]
    ks, inner = _word(levels[1:], e[1:], j - 1, r, s)
    tail = inner[1:]
    l, w = e[1], 1
    for idx, ii in enumerate(tail):
        l -= w * ii
        if idx + 1 < len(tail):
            w *= levels[1 + idx].n
    k2, i0, i1 = lemma_dos(inner[0], l, levels[0])
    return [k2] + ks, [i0, i1] + tail


def monomial_correspondence(j: int, r: int, s: int, ledger: ResolutionLedger) -> MonomialWord:
    """The word of M_j(r, s) for 2 <= j <= g + 1, 0 <= s < e_{j-1}."""
    if j < 2 or j > ledger.g + 1:
        raise BranchforgeError(f"level {j} outside 2..{ledger.g + 1}")
    if not 0 <= s < ledger.e[j - 1] or r < 0:
        raise BranchforgeError(f"need r >= 0 and 0 <= s < e_{j - 1} = {ledger.e[j - 1]}")
    ks, i = _word(ledger.levels, ledger.e, j, r, s)
    return MonomialWord(j, r, s, tuple(i), tuple(ks))


def monomial_intersection(j: int, r: int, s: int, sg: SemigroupData) -> int:
    """(M_j(r,s), f)_0 = e_{j-2} bbar_{j-1} + r e_{j-1} + s (bbar_j - n_{j-1} bbar_{j-1})."""
    e, b = sg.e, sg.gens
    if not 0 <= s < e[j - 1]:
        raise BranchforgeError("s out of range")
    value = e[j - 2] * b[j - 1] + r * e[j - 1]
    if s:
        value += s * (b[j] - sg.nseq[j - 2] * b[j - 1])
    return value


def word_weight(i: Sequence[int], gens: Sequence) -> Fraction:
    """sum i_l * bbar_l, the intersection order of the word's product."""
    return sum((Fraction(a) * b for a, b in zip(i, gens)), Fraction(0))


def invert_word(j: int, i: Sequence[int], ledger: ResolutionLedger,
                gens: Sequence[Fraction | int]) -> tuple[int, int] | None:
    """The (r, s) with monomial_correspondence(j, r, s) = i, or None.

    gens are the (possibly rescaled) semigroup values bbar_0..bbar_j used for
    the order arithmetic; e and n come from the ledger.
    """
    e = ledger.e
    s = i[j]
    if not 0 <= s < e[j - 1]:
        return None
    delta = Fraction(gens[j]) - ledger.levels[j - 2].n * Fraction(gens[j - 1])
    num = word_weight(i, gens) - e[j - 2] * Fraction(gens[j - 1]) - s * delta
    r = num / e[j - 1]
    if r.denominator != 1 or r < 0:
        return None
    r = int(r)
    try:
        word = monomial_correspondence(j, r, s, ledger)
    except BranchforgeError:
        return None
    return (r, s) if word.i == tuple(i) else None


# pullbacks and strict transforms -------------------------------------------

@dataclass(frozen=True)
class StrictTransform:
    """A(u^c X^n, u^d X^m) = u^a X^b * body, body coprime to u and X."""

    exc_exponents: tuple[int, int]
    body: Poly

    def body_on_divisor(self) -> Poly:
        """body restricted to X = 0, as a polynomial in u (y-slot)."""
        return self.body.compose(x=0)


def toric_pullback(a: Poly, lvl: LevelData) -> StrictTransform:
    if a.is_zero():
        raise BranchforgeError("pullback of the zero polynomial")
    raw = {}
    for (k, i, j), coef in a.terms().items():
        key = (k, lvl.n * i + lvl.m * j, lvl.c * i + lvl.d * j)
        raw[key] = raw.get(key, 0) + coef
    au = min(key[2] for key in raw)
    bx = min(key[1] for key in raw)
    body = Poly.from_terms({(k, i - bx, j - au): coef for (k, i, j), coef in raw.items()})
    return StrictTransform((au, bx), body)


@dataclass(frozen=True)
class ChainLevel:
    j: int
    polynomial: Poly
    n: int
    m: int
    e: int
    theta: Fraction
    transform: StrictTransform
    translated: Poly


def _edge_power(poly: Poly, n: int, m: int, e: int) -> tuple[Fraction, Fraction]:
    """(alpha, theta) when the edge restriction equals alpha (y^n - theta x^m)^e."""
    level = n * m * e
    edge = {(i, j): c for (_, i, j), c in poly.terms().items() if m * j + n * i == level}
    alpha = edge.get((0, n * e))
    corner = edge.get((m * e, 0))
    if alpha is None or corner is None:
        raise NotIrreducibleError("edge restriction lacks a vertex")
    # coefficient of y^{n(e-1)} x^m is -e*alpha*theta
    nxt = edge.get((m, n * (e - 1)), Fraction(0))
    theta = -nxt / (e * alpha)
    expected = alpha * (Y**n - theta * X**m) ** e
    if Poly.from_terms(edge) != expected or theta == 0:
        raise NotIrreducibleError("edge restriction is not a pure power of a binomial")
    return alpha, theta


def _straighten(g: Poly, e_expected: int, cap: int) -> Poly:
    # Remove integer-slope edges (y - c x^k)^E by translation until ramification appears.
    for _ in range(cap):
        poly = newton_polygon(g)
        data = single_edge_check(poly)
        if data is None:
            raise NotIrreducibleError("Newton polygon has more than one edge")
        n, m, e = data
        if n > 1:
            return g
        alpha, theta = _edge_power(g, 1, m, e)
        g = g.compose(y=Y + theta * X**m)
    raise NotIrreducibleError("straightening did not terminate")


def strict_transform_chain(f: Poly, ledger: ResolutionLedger) -> list[ChainLevel]:
    """Follow the strict transform of the branch f through every level of the ledger."""
    chain = []
    g = f
    for lvl in ledger.levels:
        e_prev = ledger.e[lvl.j - 1]
        g = _straighten(g, e_prev, cap=4 * max(g.deg_x(), 1) + 8)
        data = single_edge_check(newton_polygon(g))
        if data != (lvl.n, lvl.m, ledger.e[lvl.j]):
            raise NotIrreducibleError(f"level {lvl.j}: edge data {data} differs from ({lvl.n}, {lvl.m}, {ledger.e[lvl.j]})")
        alpha, theta = _edge_power(g, lvl.n, lvl.m, ledger.e[lvl.j])
        tr = toric_pullback(g, lvl)
        expected = alpha * (ONE - theta * Y) ** ledger.e[lvl.j]
        if tr.body_on_divisor() != expected:
            raise NotIrreducibleError(f"not irreducible at level {lvl.j}")
        translated = tr.body.compose(y=(ONE + Y) / theta)
        chain.append(ChainLevel(lvl.j, g, lvl.n, lvl.m, ledger.e[lvl.j], theta, tr, translated))
        g = translated
    return chain


def ledger_with_thetas(ledger: ResolutionLedger, chain: Sequence[ChainLevel]) -> ResolutionLedger:
    levels = tuple(
        LevelData(l.j, l.n, l.m, l.c, l.d, ch.theta) for l, ch in zip(ledger.levels, chain)
    )
    return ResolutionLedger(levels, ledger.gens, ledger.e)


def semiroots(f: Poly, ledger: ResolutionLedger, upto: int | None = None) -> list[Poly]:
    """Approximate roots f_1, ..., f_upto of degrees e_0 / e_{l-1}."""
    upto = ledger.g + 1 if upto is None else upto
    e = ledger.e
    return [approximate_root(f, e[0] // e[l - 1]) for l in range(1, upto + 1)]
