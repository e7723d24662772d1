"""Characteristic exponents, semigroup generators and their arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import gcd
from typing import NamedTuple, Sequence

from .errors import InvalidSemigroupError


@total_ordering
class _Infinity:
    """Sentinel for the generator past the last one; larger than every integer."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity)

    def __lt__(self, other) -> bool:
        return False

    def __hash__(self) -> int:
        return hash("INFINITY")


INFINITY = _Infinity()


def gcd_chain(values: Sequence[int]) -> tuple[int, ...]:
    out, g = [], 0
    for v in values:
        g = gcd(g, v)
        out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class CharData:
    """Multiplicity n and characteristic exponents b_1 < ... < b_g."""

    n: int
    b: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSemigroupError("multiplicity must be positive")
        if any(x <= 0 for x in self.b) or any(a >= c for a, c in zip(self.b, self.b[1:])):
            raise InvalidSemigroupError("characteristic exponents must increase strictly")
        e = gcd_chain((self.n,) + self.b)
        if any(a <= c for a, c in zip(e, e[1:])) or e[-1] != 1:
            raise InvalidSemigroupError(f"gcd chain {e} must decrease strictly to 1")

    @classmethod
    def from_pairs(cls, nseq: Sequence[int], mseq: Sequence[int]) -> CharData:
        """Build from the edge data (n_j, m_j) of the resolution levels."""
        if len(nseq) != len(mseq):
            raise InvalidSemigroupError("nseq and mseq differ in length")
        for nj, mj in zip(nseq, mseq):
            if nj < 2 or mj < 1 or gcd(nj, mj) != 1:
                raise InvalidSemigroupError(f"bad level pair ({nj}, {mj})")
        g = len(nseq)
        e = [1] * (g + 1)
        for j in range(g - 1, -1, -1):
            e[j] = e[j + 1] * nseq[j]
        b, prev = [], 0
        for j in range(g):
            prev += mseq[j] * e[j + 1]
            b.append(prev)
        return cls(e[0], tuple(b))

    @property
    def g(self) -> int:
        return len(self.b)

    @property
    def e(self) -> tuple[int, ...]:
        return gcd_chain((self.n,) + self.b)

    @property
    def nseq(self) -> tuple[int, ...]:
        e = self.e
        return tuple(e[j - 1] // e[j] for j in range(1, len(e)))

    @property
    def mseq(self) -> tuple[int, ...]:
        e, b = self.e, (0,) + self.b
        return tuple((b[j] - b[j - 1]) // e[j] for j in range(1, len(e)))


@dataclass(frozen=True)
class SemigroupData:
    """Minimal generators bbar_0 < bbar_1 < ... of the semigroup of a branch."""

    gens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(int(v) for v in self.gens))

    @property
    def g(self) -> int:
        return len(self.gens) - 1

    @property
    def e(self) -> tuple[int, ...]:
        return gcd_chain(self.gens)

    @property
    def nseq(self) -> tuple[int, ...]:
        e = self.e
        return tuple(e[j - 1] // e[j] for j in range(1, len(e)))

    def bbar(self, j: int):
        """b̄_j, with the INFINITY sentinel for j = g + 1."""
        return INFINITY if j == self.g + 1 else self.gens[j]

    def conductor(self) -> int:
        n = self.nseq
        return sum((n[j - 1] - 1) * self.gens[j] for j in range(1, self.g + 1)) - self.gens[0] + 1


def generators_from_char(c: CharData) -> SemigroupData:
    gens = [c.n]
    if c.g:
        gens.append(c.b[0])
    nseq = c.nseq
    for j in range(1, c.g):
        gens.append(nseq[j - 1] * gens[j] + c.b[j] - c.b[j - 1])
    return SemigroupData(tuple(gens))


def char_from_generators(s: SemigroupData) -> CharData:
    ok = validate_plane_semigroup(s)
    if not ok:
        raise InvalidSemigroupError(ok.witness)
    b = []
    nseq = s.nseq
    for j in range(1, s.g + 1):
        if j == 1:
            b.append(s.gens[1])
        else:
            b.append(b[-1] + s.gens[j] - nseq[j - 2] * s.gens[j - 1])
    return CharData(s.gens[0], tuple(b))


@dataclass(frozen=True)
class TeeExpansion:
    """Coefficients eta_0, ..., eta_g with 0 <= eta_j < n_j for j >= 1."""

    eta: tuple[int, ...]


def _bounded_expansion(v: int, gens: Sequence[int]) -> tuple[int, ...] | None:
    # Top-down: eta_j is forced modulo n_j by divisibility through e_{j-1}.
    e = gcd_chain(gens)
    if v < 0 or v % e[-1]:
        return None
    eta = [0] * len(gens)
    for j in range(len(gens) - 1, 0, -1):
        nj = e[j - 1] // e[j]
        unit = pow(gens[j] // e[j] % nj, -1, nj) if nj > 1 else 0
        eta[j] = (v // e[j]) * unit % nj
        v -= eta[j] * gens[j]
        if v < 0:
            return None
    if v % gens[0]:
        return None
    eta[0] = v // gens[0]
    return tuple(eta)


def tee_expand(v: int, s: SemigroupData) -> TeeExpansion | None:
    """Unique bounded expansion of v in the generators, or None if v is not in the semigroup."""
    eta = _bounded_expansion(v, s.gens)
    return None if eta is None else TeeExpansion(eta)


def _in_monoid(v: int, gens: Sequence[int]) -> bool:
    reach = [False] * (v + 1)
    reach[0] = True
    for t in range(1, v + 1):
        reach[t] = any(t >= a and reach[t - a] for a in gens)
    return reach[v]


class Validation(NamedTuple):
    ok: bool
    witness: str | None

    def __bool__(self) -> bool:
        return self.ok


def validate_plane_semigroup(s: SemigroupData) -> Validation:
    """Check that s is the semigroup of a plane branch; the witness names the first failure."""
    gens = s.gens
    if not gens:
        return Validation(False, "empty generator list")
    if any(v <= 0 for v in gens):
        return Validation(False, "generators must be positive")
    if len(gens) > 1 and gens[0] >= gens[1]:
        return Validation(False, "bbar_0 must be smaller than bbar_1")
    e = s.e
    for j in range(1, len(e)):
        if e[j] >= e[j - 1]:
            return Validation(False, f"gcd chain stalls at j={j} (e={e[j]})")
    if e[-1] != 1:
        return Validation(False, f"gcd chain ends at {e[-1]}, not 1")
    nseq = s.nseq
    for j in range(1, s.g + 1):
        target = nseq[j - 1] * gens[j]
        if j < s.g and not target < gens[j + 1]:
            return Validation(False, f"n_{j}*bbar_{j} = {target} is not below bbar_{j + 1}")
        if not _in_monoid(target, gens[:j]):
            return Validation(False, f"n_{j}*bbar_{j} = {target} not generated by bbar_0..bbar_{j - 1}")
    return Validation(True, None)


@dataclass(frozen=True)
class MonomialCurveEquation:
    """Binomial v_j^{n_j} - prod v_i^{eta_i} of the monomial curve."""

    j: int
    n: int
    eta: tuple[int, ...]

    def __str__(self) -> str:
        rhs = "*".join(f"v{i}^{a}" if a > 1 else f"v{i}" for i, a in enumerate(self.eta) if a)
        return f"v{self.j}^{self.n} - {rhs or '1'}"


def monomial_curve_equations(s: SemigroupData) -> list[MonomialCurveEquation]:
    ok = validate_plane_semigroup(s)
    if not ok:
        raise InvalidSemigroupError(ok.witness)
    out = []
    nseq = s.nseq
    for j in range(1, s.g + 1):
        eta = _bounded_expansion(nseq[j - 1] * s.gens[j], s.gens[:j])
        assert eta is not None
        out.append(MonomialCurveEquation(j, nseq[j - 1], eta))
    return out
