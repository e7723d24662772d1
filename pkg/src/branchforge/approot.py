"""H-adic expansions, approximate roots and expansions in a system of roots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, ZERO, Poly, Y, intersection_mult
from .errors import BranchforgeError, NotMonicError
from .semigroup import SemigroupData


def h_adic(f: Poly, h: Poly) -> list[Poly]:
    """Coefficients [a_0, ..., a_s] with f = a_0 h^s + ... + a_s and deg_y a_i < deg_y h."""
    if not h.is_monic_y() or h.deg_y() < 1:
        raise NotMonicError("expansion base must be monic in y of positive degree")
    s = max(f.deg_y(), 0) // h.deg_y()
    digits = []
    rest = f
    for _ in range(s + 1):
        rest, r = rest.divmod_y(h) if rest else (ZERO, ZERO)
        digits.append(r)
    return digits[::-1]


def tschirnhausen(f: Poly, h: Poly) -> Poly:
    """One Tschirnhausen step: h + a_1/k where k = deg f / deg h."""
    n, m = f.deg_y(), h.deg_y()
    if m < 1 or n % m:
        raise BranchforgeError(f"degree {m} does not divide {n}")
    k = n // m
    a = h_adic(f, h)
    return h + a[1] / k if k >= 1 and len(a) > 1 else h


def approximate_root(f: Poly, m: int) -> Poly:
    """The monic G of y-degree m with deg_y(f - G^(N/m)) < N - m."""
    if not f.is_monic_y():
        raise NotMonicError("approximate roots need a polynomial monic in y")
    n = f.deg_y()
    if m < 1 or n % m:
        raise BranchforgeError(f"degree {m} does not divide {n}")
    k = n // m
    g = Y**m
    for _ in range(m + 1):
        a = h_adic(f, g)
        if a[1].is_zero():
            break
        g = g + a[1] / k
    if (f - g**k).deg_y() >= n - m:
        raise AssertionError("approximate root failed the defining inequality")
    return g


def tschirnhausen_shift(f: Poly) -> tuple[Poly, Poly]:
    """Remove the y^(N-1) term: return (f(x, y - a/N), a/N) where a is that coefficient."""
    n = f.deg_y()
    if not f.is_monic_y():
        raise NotMonicError("shift needs a polynomial monic in y")
    if n < 1:
        return f, ZERO
    shift = f.coeff_y(n - 1) / n
    return f.compose(y=Y - shift), shift


@dataclass(frozen=True)
class RootSystem:
    """Monic polynomials of y-degrees 1, N_1, N_1 N_2, ...; each degree divides the next."""

    roots: tuple[Poly, ...]

    def __post_init__(self):
        degs = self.degrees
        if not self.roots or degs[0] != 1:
            raise BranchforgeError("a root system starts with a degree-1 polynomial")
        if any(not r.is_monic_y() for r in self.roots):
            raise NotMonicError("roots must be monic in y")
        for a, b in zip(degs, degs[1:]):
            if b % a or b // a < 2:
                raise BranchforgeError(f"degrees {degs} must multiply by integers >= 2")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.deg_y() for r in self.roots)

    @property
    def ratios(self) -> tuple[int, ...]:
        d = self.degrees
        return tuple(b // a for a, b in zip(d, d[1:]))


@dataclass(frozen=True)
class MultiAdicExpansion:
    """f = sum over I of alpha_I(x) * F_1^{i_1} ... F_k^{i_k}."""

    terms: dict[tuple[int, ...], Poly]
    system: RootSystem

    def q_index(self, index: tuple[int, ...]) -> int:
        """y-degree of the product of roots for this index."""
        return sum(i * d for i, d in zip(index, self.system.degrees))

    def reconstruct(self) -> Poly:
        total = ZERO
        for index, coeff in self.terms.items():
            term = coeff
            for i, root in zip(index, self.system.roots):
                term = term * root**i
            total = total + term
        return total

    def monomials(self) -> list[tuple[int, tuple[int, ...], Fraction | Poly]]:
        """Split each coefficient into x-monomials: (i_0, I, coefficient in lambda)."""
        out = []
        for index, coeff in sorted(self.terms.items()):
            by_i: dict[int, dict] = {}
            for (k, i, _), c in coeff.terms().items():
                by_i.setdefault(i, {})[(k, 0, 0)] = c
            for i0, t in sorted(by_i.items()):
                out.append((i0, index, Poly.from_terms(t)))
        return out


def multi_adic(f: Poly, rs: RootSystem) -> MultiAdicExpansion:
    """Expansion of f in the roots, taking F_k-adic expansions from the last root down."""
    roots = rs.roots

    def expand(p: Poly, k: int) -> dict[tuple[int, ...], Poly]:
        if p.is_zero():
            return {}
        if k < 0:
            return {(): p}
        out = {}
        digits = h_adic(p, roots[k])
        s = len(digits) - 1
        for idx, a in enumerate(digits):
            for sub, coeff in expand(a, k - 1).items():
                out[sub + (s - idx,)] = coeff
        return out

    return MultiAdicExpansion(expand(f, len(roots) - 1), rs)


def approximate_roots(f: Poly, degrees: Sequence[int]) -> list[Poly]:
    return [approximate_root(f, d) for d in degrees]


def semiroot_check(f: Poly, h: Poly, j: int, s: SemigroupData) -> bool:
    """Whether (f, h)_0 = bbar_j and deg_y h = n_0 ... n_{j-1}."""
    if j < 1 or j > s.g:
        raise BranchforgeError(f"level {j} out of range 1..{s.g}")
    e = s.e
    return h.deg_y() == e[0] // e[j - 1] and intersection_mult(f, h) == s.gens[j]


__all__ = [
    "h_adic", "tschirnhausen", "approximate_root", "approximate_roots", "tschirnhausen_shift",
    "RootSystem", "MultiAdicExpansion", "multi_adic", "semiroot_check",
]
