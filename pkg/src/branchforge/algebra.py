"""Exact sparse polynomials over the rationals in the variables (lambda, x, y).

One immutable class, :class:`Poly`, carries both bivariate polynomials in
(x, y) and one-parameter families in (lambda, x, y).  Arithmetic is delegated
to FLINT's multivariate rational polynomials through ``python-flint``;
coefficients are exposed as :class:`fractions.Fraction`.

Resultants follow the Sylvester-determinant sign convention:
``Res_y(A, B) = det Syl(A, B)`` with A's coefficient rows first.  For example
``Res_y(y^2 - x^3, y) = -x^3``.

Only polynomial inputs are accepted.  This loses no generality for the
invariants computed here: the characteristic exponents and the semigroup of
a reduced germ depend only on a finite jet of its equation (any jet beyond
the conductor of the discriminant determines the topological type), so a
polynomial truncation of a power series germ has the same data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

import flint

from .errors import BranchforgeError, NonCoprimeError, NotMonicError

# y is the first generator so that lex order makes divmod a Euclidean
# division in y whenever the divisor is monic in y.
_CTX = flint.fmpq_mpoly_ctx.get(("y", "x", "l"), "lex")
_VARS = ("l", "x", "y")

Scalar = Union[int, Fraction]


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _fmpq(c: Scalar) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def format_rational(c: Scalar) -> str:
    """Canonical text for a rational: ``p`` or ``p/q`` with q > 0."""
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable polynomial in Q[lambda, x, y].

    Term keys are ``(k, i, j)`` for ``lambda^k x^i y^j``; :meth:`xy_terms`
    gives ``(i, j)`` keys for lambda-free polynomials.
    """

    __slots__ = ("_p", "_terms")

    def __init__(self, raw: flint.fmpq_mpoly):
        self._p = raw
        self._terms: dict[tuple[int, int, int], Fraction] | None = None

    # construction ------------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls(_CTX.from_dict({(0, 0, 0): _fmpq(c)}) if c else _CTX.from_dict({}))

    @classmethod
    def monomial(cls, i: int = 0, j: int = 0, k: int = 0, coeff: Scalar = 1) -> Poly:
        if min(i, j, k) < 0:
            raise BranchforgeError("negative exponent in monomial")
        return cls.from_terms({(k, i, j): coeff})

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], Scalar]) -> Poly:
        """Build from ``{(i, j): c}`` or ``{(k, i, j): c}``."""
        data = {}
        for key, c in terms.items():
            if len(key) == 2:
                k, (i, j) = 0, key
            else:
                k, i, j = key
            c = Fraction(c)
            if not c:
                continue
            ykey = (j, i, k)
            data[ykey] = data.get(ykey, Fraction(0)) + c
        return cls(_CTX.from_dict({key: _fmpq(c) for key, c in data.items() if c}))

    @staticmethod
    def _coerce(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return None

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p + o._p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p - o._p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(o._p - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p * o._p)

    __rmul__ = __mul__

    def __neg__(self) -> Poly:
        return Poly(-self._p)

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise BranchforgeError("exponent must be a nonnegative integer")
        return Poly(self._p**e)

    def __truediv__(self, c: Scalar) -> Poly:
        c = Fraction(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly(self._p * _fmpq(1 / c))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return o is not None and self._p == o._p

    def __hash__(self) -> int:
        return hash(frozenset(self.terms().items()))

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    # inspection ----------------------------------------------------------
    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        if self._terms is None:
            self._terms = {
                (int(k), int(i), int(j)): _frac(c) for (j, i, k), c in self._p.to_dict().items()
            }
        return self._terms  # shared cache: callers must not mutate

    def xy_terms(self) -> dict[tuple[int, int], Fraction]:
        if self.has_lambda():
            raise BranchforgeError("polynomial depends on lambda")
        return {(i, j): c for (_, i, j), c in self.terms().items()}

    def support(self) -> set[tuple[int, int]]:
        """Exponent pairs (i, j) carrying a nonzero coefficient in Q[lambda]."""
        return {(i, j) for (_, i, j) in self.terms()}

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return all(key == (0, 0, 0) for key in self.terms())

    def constant_value(self) -> Fraction:
        return self.terms().get((0, 0, 0), Fraction(0))

    def has_lambda(self) -> bool:
        return any(k for (k, _, _) in self.terms())

    def deg_y(self) -> int:
        return max((j for (_, _, j) in self.terms()), default=-1)

    def deg_x(self) -> int:
        return max((i for (_, i, _) in self.terms()), default=-1)

    def deg_lambda(self) -> int:
        return max((k for (k, _, _) in self.terms()), default=-1)

    def ord_x(self) -> int | None:
        """Smallest x-exponent present, None for the zero polynomial."""
        return min((i for (_, i, _) in self.terms()), default=None)

    def coeff_y(self, j: int) -> Poly:
        """Coefficient of y^j as a polynomial in (lambda, x)."""
        return Poly.from_terms({(k, i, 0): c for (k, i, jj), c in self.terms().items() if jj == j})

    def coeff_xy(self, i: int, j: int) -> Poly:
        """Coefficient of x^i y^j as a polynomial in lambda."""
        return Poly.from_terms(
            {(k, 0, 0): c for (k, ii, jj), c in self.terms().items() if (ii, jj) == (i, j)}
        )

    def lambda_value(self, value: Scalar) -> Poly:
        return Poly(self._p.subs({"l": _fmpq(value)}))

    def is_monic_y(self) -> bool:
        d = self.deg_y()
        return d >= 0 and self.coeff_y(d) == 1

    # calculus and substitution --------------------------------------------
    def diff(self, var: str) -> Poly:
        return Poly(self._p.derivative(_name(var)))

    def compose(self, *, x: Poly | Scalar | None = None, y: Poly | Scalar | None = None,
                lam: Poly | Scalar | None = None) -> Poly:
        """Simultaneously substitute polynomials for the variables."""
        gens = dict(zip(("y", "x", "l"), _CTX.gens()))
        new = {
            "y": gens["y"] if y is None else Poly._coerce(y)._p,
            "x": gens["x"] if x is None else Poly._coerce(x)._p,
            "l": gens["l"] if lam is None else Poly._coerce(lam)._p,
        }
        return Poly(self._p.compose(new["y"], new["x"], new["l"], ctx=_CTX))

    def divmod_y(self, divisor: Poly) -> tuple[Poly, Poly]:
        if not divisor.is_monic_y() or divisor.deg_y() < 1:
            raise NotMonicError("divisor must be monic in y of positive degree")
        q, r = divmod(self._p, divisor._p)
        return Poly(q), Poly(r)

    def resultant_y(self, other: Poly) -> Poly:
        return Poly(self._p.resultant(other._p, "y"))

    def resultant_var(self, other: Poly, var: str) -> Poly:
        return Poly(self._p.resultant(other._p, _name(var)))

    # printing ------------------------------------------------------------
    def __str__(self) -> str:
        items = sorted(self.terms().items(), key=lambda t: (-t[0][2], -t[0][1], -t[0][0]))
        if not items:
            return "0"
        out = []
        for n, ((k, i, j), c) in enumerate(items):
            factors = [f"{v}^{e}" if e > 1 else v for v, e in zip(_VARS, (k, i, j)) if e]
            mag = abs(c)
            body = "*".join(([format_rational(mag)] if mag != 1 or not factors else []) + factors)
            sign = "-" if c < 0 else "+"
            out.append((("-" if c < 0 else "") if n == 0 else f" {sign} ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _name(var: str) -> str:
    names = {"x": "x", "y": "y", "l": "l", "lambda": "l"}
    if var not in names:
        raise BranchforgeError(f"unknown variable {var!r}")
    return names[var]


X = Poly.monomial(i=1)
Y = Poly.monomial(j=1)
LAM = Poly.monomial(k=1)
ONE = Poly.constant(1)
ZERO = Poly.constant(0)


def poly_sum(items: Iterable[Poly]) -> Poly:
    total = ZERO
    for p in items:
        total = total + p
    return total


# module-level operations --------------------------------------------------

def euclid_div_y(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Return (Q, R) with ``a = Q*b + R`` and ``deg_y R < deg_y b``."""
    return a.divmod_y(b)


def resultant_y(a: Poly, b: Poly) -> Poly:
    """Sylvester resultant eliminating y (FLINT's subresultant algorithm)."""
    if a.is_zero() and b.is_zero():
        raise BranchforgeError("resultant of two zero polynomials")
    return a.resultant_y(b)


def intersection_mult(f: Poly, h: Poly) -> int:
    """Intersection multiplicity at the origin, ``ord_x Res_y(f, h)``.

    Raises NonCoprimeError when f and h share a factor.
    """
    if h.is_zero():
        raise NonCoprimeError("intersection with the zero polynomial")
    res = resultant_y(f, h)
    if res.is_zero():
        raise NonCoprimeError("resultant vanishes identically: common factor")
    return res.ord_x()


def partial_y(a: Poly) -> Poly:
    return a.diff("y")


def partial_x(a: Poly) -> Poly:
    return a.diff("x")


def eval_lambda0(f: Poly) -> Poly:
    return f.lambda_value(0)


def substitute(a: Poly, x_expr: Poly | Scalar, y_expr: Poly | Scalar) -> Poly:
    """Compose ``a(x_expr, y_expr)``; the new expressions may use any variable slot."""
    return a.compose(x=x_expr, y=y_expr)


def is_square_free(f: Poly) -> bool:
    """For f monic in y: the discriminant Res_y(f, f_y) is not identically zero."""
    if f.deg_y() < 1:
        return True
    return not resultant_y(f, partial_y(f)).is_zero()


def lambda_coefficients(f: Poly) -> dict[int, Poly]:
    """Split f as sum over k of lambda^k * f_k(x, y)."""
    parts: dict[int, dict] = {}
    for (k, i, j), c in f.terms().items():
        parts.setdefault(k, {})[(i, j)] = c
    return {k: Poly.from_terms(t) for k, t in sorted(parts.items())}
