"""Equisingularity of one-parameter families F_lambda(x, y) at lambda = 0.

Three checks are offered:

* :func:`cri1_equisingular` runs the approximate-root algorithm without
  prior knowledge of the special fiber;
* :func:`equi_the_check` verifies the weight conditions when the
  characteristic data of the special fiber is already known;
* :func:`cri2_check` compares jacobian Newton polygons at generic lambda and
  at lambda = 0 (a necessary condition only).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import flint

from .algebra import Poly, X, Y, eval_lambda0, intersection_mult, is_square_free
from .approot import RootSystem, approximate_root, multi_adic, tschirnhausen_shift
from .errors import NonCoprimeError, PreparationError
from .newton import NewtonPolygon, staircase_hull
from .semigroup import CharData, generators_from_char
from .toric import invert_word, ledger_from_pairs, monomial_correspondence

_JCTX = flint.fmpq_mpoly_ctx.get(("y", "x", "l", "t"), "lex")


@dataclass(frozen=True)
class EquisingularityReport:
    verdict: str  # "yes", "no" or "error"
    method: str
    trace: tuple[tuple[int, int, Fraction], ...] = ()
    witness: dict | None = None
    note: str | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict == "yes"


# preparation ------------------------------------------------------------

def prepare_family(f: Poly) -> Poly:
    """Bring F to y^N + sum A_i(lambda, x) y^(N-i) with tangent cone y^N.

    Supported scope: the coefficient of y^N in the tangent cone is a nonzero
    constant and, after the linear change of y, F is already monic of degree
    N in y (no Weierstrass preparation is attempted).  A family that is
    already monic of degree N = multiplicity with no y^(N-1) term is
    returned unchanged.
    """
    terms = f.terms()
    if any(i == 0 and j == 0 for (_, i, j) in terms):
        raise PreparationError("F(lambda, 0, 0) is not identically zero")
    if f.is_zero():
        raise PreparationError("zero family")
    big_n = min(i + j for (_, i, j) in terms)
    if _check_normal_form(f) is None and f.deg_y() == big_n:
        # already in the algorithm's shape; edge defects are diagnosed by the criteria
        return f
    cone = Poly.from_terms({key: c for key, c in terms.items() if key[1] + key[2] == big_n})
    lead = cone.coeff_xy(0, big_n)
    if lead.is_zero():
        raise PreparationError("y^N is missing from the tangent cone (swap the axes)")
    if not lead.is_constant():
        raise PreparationError("the y^N coefficient of the tangent cone depends on lambda (unsupported)")
    c_n = lead.constant_value()
    a = cone.coeff_xy(1, big_n - 1) / (big_n * c_n)
    if cone != c_n * (Y + a * X) ** big_n:
        raise PreparationError("tangent cone is not a pure power of a linear form")
    g = f.compose(y=Y - a * X) / c_n
    if not g.is_monic_y() or g.deg_y() != big_n:
        raise PreparationError("family is not monic of degree N in y after the linear change "
                               "(Weierstrass preparation is out of scope)")
    g, _ = tschirnhausen_shift(g)
    return g


# edge form -----------------------------------------------------------------

@dataclass(frozen=True)
class EdgeForm:
    m: int
    theta: Poly


def _edge_form(terms: Sequence[tuple[tuple[int, int], Poly]], n: int, level: int) -> EdgeForm | dict:
    """Locate -theta x^M among the (r, s) terms and check the rest lies above the edge."""
    cands = [(r, c) for (r, s), c in terms if s == 0 and c.lambda_value(0) != 0]
    if not cands:
        return {"condition": "no-edge-term", "level": level}
    m, coeff = min(cands, key=lambda t: t[0])
    theta = -coeff
    if gcd(n, m) != 1:
        return {"condition": "edge-not-coprime", "level": level, "N": n, "M": m}
    for (r, s), c in sorted(terms, key=lambda t: t[0]):
        if (r, s) == (m, 0):
            continue
        if s >= n - 1 or r * n + s * m <= n * m:
            return {"condition": "term-below-edge", "level": level, "term": [r, s]}
    return EdgeForm(m, theta)


def edge_form_check(g: Poly, n: int, level: int = 1) -> EdgeForm | dict:
    """Check g = y^n - theta(lambda) x^M + (terms above the edge) with gcd(n, M) = 1.

    Returns the EdgeForm or a witness dictionary naming the offending term.
    """
    terms: dict[tuple[int, int], dict] = {}
    for (k, i, j), c in g.terms().items():
        if (i, j) != (0, n):
            terms.setdefault((i, j), {})[(k, 0, 0)] = c
    if g.coeff_xy(0, n) != 1 or g.deg_y() != n:
        return {"condition": "not-monic", "level": level}
    return _edge_form([(rs, Poly.from_terms(t)) for rs, t in terms.items()], n, level)


# Algorithm cri-1 -----------------------------------------------------------

def _check_normal_form(f: Poly) -> str | None:
    if not f.is_monic_y():
        return "family is not monic in y"
    n = f.deg_y()
    if n >= 1 and not f.coeff_y(n - 1).is_zero():
        return "family has a nonzero y^(N-1) coefficient (prepare it first)"
    if any(i == 0 and j == 0 for (_, i, j) in f.terms()):
        return "family does not pass through the origin"
    return None


def cri1_equisingular(f: Poly) -> EquisingularityReport:
    """Approximate-root algorithm deciding equisingularity at lambda = 0 to a branch."""
    method = "cri1"
    msg = _check_normal_form(f)
    if msg:
        return EquisingularityReport("error", method, note=msg)
    big_n = f.deg_y()
    if big_n == 1:
        return EquisingularityReport("yes", method, note="smooth family")
    f0 = eval_lambda0(f)
    if not is_square_free(f0):
        return EquisingularityReport("error", method, note="special fiber is not reduced")
    trace: list[tuple[int, int, Fraction]] = []
    bbar, E, pairs = [big_n], [big_n], []
    roots = [Y]

    def no(witness: dict) -> EquisingularityReport:
        return EquisingularityReport("no", method, tuple(trace), witness)

    try:
        b_next = intersection_mult(f0, Y)
    except NonCoprimeError:
        return EquisingularityReport("error", method, note="y divides the special fiber")
    j = 1
    while True:
        bbar.append(b_next)
        e_j = gcd(E[-1], b_next)
        if e_j == E[-1]:
            return no({"condition": "E-stagnation", "level": j, "Bbar": b_next})
        n_j = E[-1] // e_j
        E.append(e_j)
        nxt = f if e_j == 1 else approximate_root(f, big_n // e_j)
        expansion = multi_adic(nxt, RootSystem(tuple(roots)))
        lead = (0,) * (j - 1) + (n_j,)
        if j >= 2:
            ledger = ledger_from_pairs([p[0] for p in pairs], [p[1] for p in pairs],
                                       [x // e_j for x in E])
            gens = [b // e_j for b in bbar]
        collected = []
        for i0, index, coeff in expansion.monomials():
            if i0 == 0 and index == lead:
                continue
            word = (i0,) + index
            rs = (i0, index[0]) if j == 1 else invert_word(j, word, ledger, gens)
            if rs is None:
                return no({"condition": "not-a-monomial", "level": j, "term": list(word)})
            collected.append((rs, coeff))
        edge = _edge_form(collected, n_j, j)
        if isinstance(edge, dict):
            return no(edge)
        expected = Fraction(bbar[1], e_j) if j == 1 else Fraction(bbar[j] - pairs[-1][0] * bbar[j - 1], e_j)
        if edge.m != expected:
            return no({"condition": "inconsistent-edge", "level": j, "M": edge.m, "expected": str(expected)})
        trace.append((n_j, edge.m, edge.theta.lambda_value(0).constant_value()))
        pairs.append((n_j, edge.m))
        if e_j == 1:
            return EquisingularityReport("yes", method, tuple(trace), data={"semigroup": bbar})
        try:
            b_next = intersection_mult(f0, eval_lambda0(nxt))
        except NonCoprimeError:
            return EquisingularityReport("error", method, tuple(trace), note="degenerate special fiber")
        if b_next <= n_j * bbar[j]:
            return no({"condition": "Bbar-ordering", "level": j + 1, "Bbar": b_next})
        roots.append(nxt)
        j += 1


# weight form with known characteristic data ------------------------------------

def equi_the_check(f: Poly, char: CharData) -> EquisingularityReport:
    """Check the expansions F_{j+1} = F_j^{n_j} - theta M(m_j, 0) + heavier terms."""
    method = "equi-the"
    msg = _check_normal_form(f)
    if msg:
        return EquisingularityReport("error", method, note=msg)
    e, b = char.e, generators_from_char(char).gens
    if f.deg_y() != e[0]:
        return EquisingularityReport("error", method, note="degree differs from the multiplicity")
    nseq, mseq = char.nseq, char.mseq
    trace = []
    roots = [Y]
    for j in range(1, char.g + 1):
        n_j, m_j = nseq[j - 1], mseq[j - 1]
        nxt = f if j == char.g else approximate_root(f, e[0] // e[j])
        expansion = multi_adic(nxt, RootSystem(tuple(roots)))
        bound = n_j * b[j]
        if j == 1:
            principal = (m_j, 0)
        else:
            ledger = ledger_from_pairs(nseq[: j - 1], mseq[: j - 1], [x // e[j] for x in e[: j + 1]])
            principal = monomial_correspondence(j, m_j, 0, ledger).i
        lead = (0,) * (j - 1) + (n_j,)
        theta = None
        for i0, index, coeff in expansion.monomials():
            word = (i0,) + index
            if i0 == 0 and index == lead:
                continue
            if word == tuple(principal):
                theta = -coeff
                continue
            weight = sum(a * v for a, v in zip(word, b))
            if weight <= bound:
                return EquisingularityReport(
                    "no", method, tuple(trace),
                    {"condition": "weight", "level": j, "term": list(word), "weight": weight, "bound": bound})
            if j >= 2 and invert_word(j, word, ledger, [v // e[j] for v in b[: j + 1]]) is None:
                return EquisingularityReport("error", method, tuple(trace),
                                             note=f"term {word} is not a monomial M_{j}(r, s)")
        if theta is None or theta.lambda_value(0).is_zero():
            return EquisingularityReport("no", method, tuple(trace),
                                         {"condition": "theta-vanishes", "level": j, "term": list(principal)})
        trace.append((n_j, m_j, theta.lambda_value(0).constant_value()))
        roots.append(nxt)
    return EquisingularityReport("yes", method, tuple(trace))


# jacobian Newton polygons ------------------------------------------------------

def _to_jctx(p: Poly) -> flint.fmpq_mpoly:
    return _JCTX.from_dict({(j, i, k, 0): flint.fmpq(c.numerator, c.denominator)
                            for (k, i, j), c in p.terms().items()})


def jacobian_terms(f: Poly) -> dict[tuple[int, int, int], Fraction]:
    """Terms of Res_y(t - f, f_y) keyed by (lambda-exponent, t-exponent, x-exponent)."""
    if f.deg_y() < 2:
        return {}
    t = _JCTX.gens()[3]
    fj = _to_jctx(f)
    res = (t - fj).resultant(fj.derivative("y"), "y")
    return {(int(k), int(tt), int(i)): Fraction(int(c.p), int(c.q))
            for (_, i, k, tt), c in res.to_dict().items()}


def jacobian_polygon(f: Poly) -> NewtonPolygon:
    """Newton polygon in (t, x) of Res_y(t - f, f_y); lambda is treated generically."""
    pts = {(tt, i) for (_, tt, i) in jacobian_terms(f)}
    return NewtonPolygon(tuple(staircase_hull(pts)))


def cri2_check(f: Poly) -> EquisingularityReport:
    """Compare the jacobian polygon at generic lambda with the one at lambda = 0."""
    method = "cri2"
    msg = _check_normal_form(f)
    if msg:
        return EquisingularityReport("error", method, note=msg)
    if not is_square_free(eval_lambda0(f)):
        return EquisingularityReport("error", method, note="vanishing discriminant at lambda = 0")
    generic = jacobian_polygon(f)
    special = jacobian_polygon(eval_lambda0(f))
    data = {"generic": [list(v) for v in generic.vertices], "special": [list(v) for v in special.vertices]}
    if generic != special:
        return EquisingularityReport("no", method, witness={"condition": "polygon-mismatch", **data}, data=data)
    return EquisingularityReport(
        "yes", method, data=data,
        note="steps 1-3 only: recognizing branch jacobian polygons is not implemented; cross-check with cri1")
