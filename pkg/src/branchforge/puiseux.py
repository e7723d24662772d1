"""Newton-Puiseux parametrizations with rational coefficients.

This module is an independent oracle for the criterion pipeline: it
computes branches through the origin as ``x = t^n, y = sum a_i t^i``,
orders of polynomials along them, characteristic exponents, and the
inverse map from a polynomial parametrization back to an equation.

Only branches whose Puiseux coefficients are rational are supported.  When
an edge polynomial needs an irrational root, :class:`OracleScopeError` is
raised instead of guessing.  Conjugate parametrizations (t -> zeta t) are
collapsed by choosing a positive root whenever the ramification at a step
is even, so the output is deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import flint

from .algebra import LAM, Poly, X, Y, is_square_free
from .errors import BranchforgeError, NotMonicError, NotSquareFreeError, OracleScopeError, PrecisionError
from .newton import newton_polygon
from .semigroup import CharData


# truncated power series as fmpq_poly -----------------------------------------

def _series_inverse(a: flint.fmpq_poly, prec: int) -> flint.fmpq_poly:
    c0 = a.coeffs()[0] if a.length() else 0
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    b = flint.fmpq_poly([1 / flint.fmpq(c0)])
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        b = b.mul_low(2 - a.mul_low(b, k), k)
    return b.truncate(prec)


def _eval_series(h: Poly, n: int, y: flint.fmpq_poly, prec: int) -> flint.fmpq_poly:
    """h(t^n, y(t)) mod t^prec by Horner's rule in y."""
    cols: dict[int, dict[int, Fraction]] = {}
    for (_, i, j), c in h.terms().items():
        if i * n < prec:
            cols.setdefault(j, {})[i * n] = c
    if not cols:
        return flint.fmpq_poly([])
    acc = flint.fmpq_poly([])
    for j in range(max(cols), -1, -1):
        acc = acc.mul_low(y, prec) if acc.length() else acc
        col = cols.get(j)
        if col:
            coeffs = [0] * (max(col) + 1)
            for e, c in col.items():
                coeffs[e] = flint.fmpq(c.numerator, c.denominator)
            acc = acc + flint.fmpq_poly(coeffs)
    return acc.truncate(prec)


def _valuation(p: flint.fmpq_poly) -> int | None:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return None


@dataclass(frozen=True)
class PuiseuxParam:
    """x = t^n, y = sum coeffs[i] t^i, exact or known modulo t^trunc."""

    n: int
    coeffs: dict[int, Fraction]
    trunc: int
    exact: bool = False
    source: Poly | None = field(default=None, compare=False, repr=False)
    index: int = field(default=0, compare=False, repr=False)

    def y_series(self, prec: int) -> flint.fmpq_poly:
        items = {e: c for e, c in self.coeffs.items() if e < prec}
        coeffs = [0] * (max(items) + 1 if items else 0)
        for e, c in items.items():
            coeffs[e] = flint.fmpq(c.numerator, c.denominator)
        return flint.fmpq_poly(coeffs)

    def refined(self) -> PuiseuxParam:
        """The same branch recomputed with twice the truncation order."""
        if self.exact or self.source is None:
            raise PrecisionError("parametrization cannot be refined")
        return newton_puiseux(self.source, 2 * self.trunc)[self.index]


def default_trunc(f: Poly) -> int:
    env = os.environ.get("BRANCHFORGE_TRUNC")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise BranchforgeError(f"BRANCHFORGE_TRUNC must be an integer, got {env!r}")
        if value <= 0:
            raise BranchforgeError("BRANCHFORGE_TRUNC must be positive")
        return value
    return max(2 * max(f.deg_x(), 1) * max(f.deg_y(), 1), 8)


def _rational_root(w: Fraction, p: int) -> Fraction:
    if p == 1:
        return w
    if w < 0 and p % 2 == 0:
        raise OracleScopeError("irrational-coefficient branch (even root of a negative number)")
    num, den = abs(w.numerator), w.denominator
    rn, rd = int(flint.fmpz(num).root(p)), int(flint.fmpz(den).root(p))
    if rn**p != num or rd**p != den:
        raise OracleScopeError(f"irrational-coefficient branch ({w} has no rational {p}-th root)")
    c = Fraction(rn, rd)
    return -c if w < 0 else c


def _divide_x(g: Poly, power: int) -> Poly:
    return Poly.from_terms({(k, i - power, j): c for (k, i, j), c in g.terms().items()})


def _solve_smooth(g: Poly, prec: int) -> flint.fmpq_poly:
    """The series Y(T) with Y(0) = 0 and g(T, Y(T)) = 0, modulo T^prec."""
    dg = g.diff("y")
    phi = flint.fmpq_poly([])
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        val = _eval_series(g, 1, phi, k)
        der = _eval_series(dg, 1, phi, k)
        phi = (phi - val.mul_low(_series_inverse(der, k), k)).truncate(k)
    return phi


def _branches(g: Poly, n: int, prefix: dict[int, Fraction], s: int, prec: int, out: list) -> None:
    # g(T, Y) with y = prefix(T) + T^s Y and x = T^n in the original coordinates.
    if g.coeff_y(0).is_zero():
        out.append((n, dict(prefix), True))
        g = Poly.from_terms({(k, i, j - 1): c for (k, i, j), c in g.terms().items()})
    terms = g.terms()
    if (0, 0, 0) in terms or g.is_zero():
        return
    if (0, 0, 1) in terms:
        phi = _solve_smooth(g, max(prec - s, 1))
        series = dict(prefix)
        for e, c in enumerate(phi.coeffs()):
            if c != 0:
                series[e + s] = Fraction(int(c.p), int(c.q))
        out.append((n, series, False))
        return
    for edge in newton_polygon(g).edges:
        p, q = edge.normal
        level = edge.level
        on_edge = {j: c for (_, i, j), c in terms.items() if p * i + q * j == level}
        jmin = min(on_edge)
        width = (max(on_edge) - jmin) // p
        psi = [0] * (width + 1)
        for j, c in on_edge.items():
            psi[(j - jmin) // p] = flint.fmpq(c.numerator, c.denominator)
        _, factors = flint.fmpq_poly(psi).factor()
        roots = []
        for fac, _mult in factors:
            if fac.degree() != 1:
                raise OracleScopeError("irrational-coefficient branch (edge polynomial has no rational root)")
            a1, a0 = fac.coeffs()[1], fac.coeffs()[0]
            w = -a0 / a1
            roots.append(Fraction(int(w.p), int(w.q)))
        for w in sorted(roots):
            if w == 0:
                continue
            c = _rational_root(w, p)
            new_prefix = {e * p: a for e, a in prefix.items()}
            new_s = s * p + q
            # For even p, c and -c give conjugate parametrizations of one branch;
            # only one of them may keep the deeper coefficients rational.
            failure = None
            for cand in ([c, -c] if p % 2 == 0 else [c]):
                g1 = _divide_x(g.compose(x=X**p, y=X**q * (cand + Y)), level)
                found: list = []
                try:
                    _branches(g1, n * p, {**new_prefix, new_s: cand}, new_s, prec * p, found)
                except OracleScopeError as exc:
                    failure = exc
                    continue
                out.extend(found)
                break
            else:
                raise failure


def newton_puiseux(f: Poly, trunc: int | None = None) -> list[PuiseuxParam]:
    """One parametrization per branch of f through the origin."""
    if f.has_lambda():
        raise BranchforgeError("Puiseux oracle needs a polynomial free of lambda")
    if not f.is_monic_y():
        raise NotMonicError("Puiseux oracle needs a polynomial monic in y")
    if f.constant_value() != 0:
        raise BranchforgeError("f does not vanish at the origin")
    if not is_square_free(f):
        raise NotSquareFreeError("f is not square-free (discriminant vanishes)")
    trunc = trunc or default_trunc(f)
    raw: list = []
    _branches(f, 1, {}, 0, trunc, raw)
    out = []
    for idx, (n, series, exact) in enumerate(raw):
        # prec was scaled with the ramification; express it as a t-order bound
        coeffs = {e: c for e, c in series.items() if exact or e < trunc * n}
        out.append(PuiseuxParam(n, coeffs, trunc * n, exact, f, idx))
    return out


def ord_along(p: PuiseuxParam, h: Poly) -> int:
    """ord_t h(t^n, y(t)); retries once with doubled truncation, then fails."""
    if h.is_zero():
        raise BranchforgeError("order of the zero polynomial is infinite")
    param = p
    for attempt in range(2):
        if param.exact:
            deg = max(param.coeffs, default=0)
            prec = h.deg_x() * param.n + h.deg_y() * deg + 1
            v = _valuation(_eval_series(h, param.n, param.y_series(prec), prec))
            if v is None:
                raise BranchforgeError("polynomial vanishes on the branch")
            return v
        v = _valuation(_eval_series(h, param.n, param.y_series(param.trunc), param.trunc))
        if v is not None:
            return v
        if attempt == 0 and param.source is not None:
            param = param.refined()
    raise PrecisionError("insufficient precision to resolve the order along the branch")


def _char_from_coeffs(n: int, exps, complete: bool) -> CharData | None:
    e, b = n, []
    for i in sorted(exps):
        if e == 1:
            break
        if i % e:
            b.append(i)
            e = gcd(e, i)
    if e != 1:
        if complete:
            raise BranchforgeError("parametrization is not primitive")
        return None
    return CharData(n, tuple(b))


def char_exponents(p: PuiseuxParam) -> CharData:
    param = p
    for attempt in range(2):
        exps = [e for e, c in param.coeffs.items() if c and (param.exact or e < param.trunc)]
        data = _char_from_coeffs(param.n, exps, param.exact)
        if data is not None:
            return data
        if attempt == 0 and param.source is not None:
            param = param.refined()
    raise PrecisionError("insufficient precision to reach the last characteristic exponent")


def param_from_coeffs(n: int, coeffs: dict[int, Fraction | int]) -> PuiseuxParam:
    """An exact polynomial parametrization x = t^n, y = sum coeffs[i] t^i."""
    clean = {int(e): Fraction(c) for e, c in coeffs.items() if c}
    return PuiseuxParam(n, clean, max(clean, default=0) + 1, exact=True)


def implicitize(p: PuiseuxParam) -> Poly:
    """Monic equation of the branch: Res_t(t^n - x, y - y(t)), using lambda as t."""
    if not p.exact:
        raise BranchforgeError("implicitize needs an exact polynomial parametrization")
    zeta = Poly.from_terms({(e, 0, 0): c for e, c in p.coeffs.items()})
    res = (LAM**p.n - X).resultant_var(Y - zeta, "l")
    lead = res.coeff_y(res.deg_y()).constant_value()
    return res / lead


def is_irreducible_oracle(f: Poly) -> bool:
    branches = newton_puiseux(f)
    return len(branches) == 1 and branches[0].n == f.deg_y()
