"""Numerical (Weierstrass) semigroups and the ramification jumps they allow.

For a point P whose Weierstrass semigroup is S, let m be the smallest pole
number prime to p and m = m_0 > m_1 > ... > m_r = 0 the pole numbers up to
m.  A jump G_i > G_{i+1} of the p-part of the decomposition group can only
happen at i = m - m_k.  The tame jump at 0 is not modelled.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable


class SemigroupError(ValueError):
    pass


def apery_set(generators: Iterable[int]) -> list[int]:
    """Apery set w.r.t. the smallest generator g: w[i] = min member congruent to i mod g."""
    gens = sorted(set(generators))
    g = gens[0]
    dist = [None] * g
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if d != dist[r]:
            continue
        for a in gens[1:]:
            nd, nr = d + a, (r + a) % g
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return dist


@dataclass(frozen=True)
class NumericalSemigroup:
    generators: tuple[int, ...]
    conductor: int = field(init=False)
    gaps: frozenset[int] = field(init=False)

    def __post_init__(self):
        gens = tuple(sorted(set(self.generators)))
        if not gens or any(not isinstance(a, int) or a <= 0 for a in gens):
            raise SemigroupError("generators must be positive integers")
        if reduce(gcd, gens) != 1:
            raise SemigroupError(f"gcd of generators {list(gens)} is not 1")
        object.__setattr__(self, "generators", gens)
        ap = apery_set(gens)
        g = gens[0]
        frobenius_number = max(ap) - g
        conductor = frobenius_number + 1
        gaps = frozenset(x for x in range(1, conductor) if ap[x % g] > x)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "gaps", gaps)

    def __contains__(self, x: int) -> bool:
        return x >= 0 and x not in self.gaps

    def members(self, bound: int) -> list[int]:
        """Members in [0, bound], ascending."""
        return [x for x in range(bound + 1) if x in self]

    @property
    def genus(self) -> int:
        return len(self.gaps)


def semigroup(generators: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(tuple(generators))


def hermitian_semigroup(p: int, h: int) -> NumericalSemigroup:
    """Weierstrass semigroup <q, q+1>, q = p^h, of the Hermitian curve at its special point."""
    q = p ** h
    return semigroup((q, q + 1))


def artin_schreier_semigroup(p: int, s: int) -> NumericalSemigroup:
    """<p, p^s + 1>, the semigroup at infinity of W^p - W = X^(p^s+1) + lower terms."""
    return semigroup((p, p ** s + 1))


@dataclass(frozen=True)
class JumpReport:
    generators: tuple[int, ...]
    p: int
    m: int
    poles_below: tuple[int, ...]
    candidate_jumps: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.poles_below) - 1

    @property
    def dim_L(self) -> int:
        """dim L(mP) = r + 1."""
        return self.r + 1

    def order_values(self) -> tuple[int, ...]:
        """Possible values of v(sigma(t) - t), i.e. jump + 1."""
        return tuple(j + 1 for j in self.candidate_jumps)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "m": self.m,
                "poles_below": list(self.poles_below),
                "candidate_jumps": list(self.candidate_jumps)}


def jump_report(S: NumericalSemigroup, p: int) -> JumpReport:
    bound = max(S.conductor, 1) + p
    m = next((x for x in range(1, bound + 1) if x in S and x % p), None)
    if m is None:
        raise SemigroupError("no pole number prime to p")
    poles = tuple(sorted(S.members(m), reverse=True))
    jumps = tuple(sorted(m - mk for mk in poles[1:]))
    # pole numbers strictly between 0 and m are divisible by p by minimality of m,
    # so every jump m - m_k is prime to p
    for mk in poles[1:-1]:
        assert mk % p == 0, (mk, p)
    for j in jumps:
        assert j % p, f"jump {j} divisible by p={p}"
    return JumpReport(S.generators, p, m, poles, jumps)


def generated_members(sizes: Iterable[int], bound: int) -> set[int]:
    """Members up to bound of the semigroup generated by sizes."""
    sizes = sorted(set(sizes))
    reach = [False] * (bound + 1)
    reach[0] = True
    for x in range(1, bound + 1):
        reach[x] = any(x >= a and reach[x - a] for a in sizes)
    return {x for x, ok in enumerate(reach) if ok}


def orbit_covers(orbit_sizes: Iterable[int], S: NumericalSemigroup, bound: int) -> bool:
    """True iff every member of S up to bound lies in sum n_C #C."""
    sizes = list(orbit_sizes)
    if any(a <= 0 for a in sizes):
        raise SemigroupError("orbit sizes must be positive")
    if bound < S.conductor:
        raise SemigroupError("bound must be at least the conductor")
    reach = generated_members(sizes, bound)
    return all(x in reach for x in S.members(bound))


def has_singleton_orbit(orbit_sizes: Iterable[int]) -> bool:
    return 1 in set(orbit_sizes)


def total_not_divisible_forces_singleton(orbit_sizes: Iterable[int], p: int) -> bool:
    """For p-power orbit sizes: #T not divisible by p implies some orbit is a singleton."""
    sizes = list(orbit_sizes)
    return sum(sizes) % p == 0 or has_singleton_orbit(sizes)
