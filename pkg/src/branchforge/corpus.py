"""Seeded generators of random branches and semigroups for test suites.

A branch is produced from an exact parametrization ``x = t^n, y = sum c_i t^i``
whose exponents realize a random characteristic sequence, plus filler terms
that do not change it.  Its equation comes from implicitization followed by
a Tschirnhausen shift, so the generating parametrization is an independent
oracle for every invariant computed from the equation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import Poly
from .approot import tschirnhausen_shift
from .puiseux import PuiseuxParam, implicitize, param_from_coeffs
from .semigroup import CharData, SemigroupData, generators_from_char


@dataclass(frozen=True)
class CorpusBranch:
    param: PuiseuxParam
    char: CharData
    poly: Poly

    @property
    def semigroup(self) -> SemigroupData:
        return generators_from_char(self.char)


def _prime_factor_count(n: int) -> int:
    count, d = 0, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (n > 1)


def random_char(rng: random.Random, max_n: int = 12, max_exp: int = 40, max_g: int = 3) -> CharData:
    """Characteristic exponents with n <= max_n, b_g <= max_exp and at most max_g levels.

    The number of levels is drawn first, so deep branches are as common as
    the multiplicity bound allows.
    """
    while True:
        g = rng.randint(1, max_g)
        ns = [n for n in range(2, max_n + 1) if _prime_factor_count(n) >= g]
        if not ns:
            continue
        n = rng.choice(ns)
        b, e, last = [], n, n
        for level in range(g, 0, -1):
            # the new gcd must leave room for the remaining levels
            options = [v for v in range(last + 1, max_exp + 1)
                       if gcd(e, v) < e and _prime_factor_count(gcd(e, v)) >= level - 1
                       and (level > 1 or gcd(e, v) == 1)]
            if not options:
                break
            v = min(rng.sample(options, min(3, len(options))))
            b.append(v)
            e, last = gcd(e, v), v
        if e == 1:
            return CharData(n, tuple(b))


def _coefficient(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    return Fraction(num, rng.choice([1, 1, 1, 2]))


def random_param(rng: random.Random, c: CharData, extra: int = 2, max_exp: int = 40) -> PuiseuxParam:
    """Exact parametrization realizing c, with up to `extra` filler terms."""
    coeffs = {b: _coefficient(rng) for b in c.b}
    slots = []
    e = c.e
    bounds = [c.n, *c.b, max_exp + 1]
    for j in range(len(bounds) - 1):
        lo, hi = bounds[j], bounds[j + 1]
        step = e[j]
        slots.extend(v for v in range(lo + 1, hi) if v % step == 0)
    for v in rng.sample(slots, min(extra, len(slots))):
        coeffs[v] = _coefficient(rng)
    return param_from_coeffs(c.n, coeffs)


def random_branch(rng: random.Random, max_n: int = 12, max_exp: int = 40, max_g: int = 3,
                  extra: int = 2) -> CorpusBranch:
    c = random_char(rng, max_n, max_exp, max_g)
    p = random_param(rng, c, extra, max_exp)
    f, shift = tschirnhausen_shift(implicitize(p))
    # f(x, y) = g(x, y - shift(x)), so the branch of f is y(t) + shift(t^n)
    coeffs = dict(p.coeffs)
    for (i, _), a in shift.xy_terms().items():
        coeffs[i * c.n] = coeffs.get(i * c.n, Fraction(0)) + a
    return CorpusBranch(param_from_coeffs(c.n, coeffs), c, f)


def random_semigroup(rng: random.Random, max_n: int = 12, max_exp: int = 60, max_g: int = 3) -> SemigroupData:
    return generators_from_char(random_char(rng, max_n, max_exp, max_g))


def corpus(seed: int, count: int, **kwargs) -> list[CorpusBranch]:
    rng = random.Random(seed)
    return [random_branch(rng, **kwargs) for _ in range(count)]
