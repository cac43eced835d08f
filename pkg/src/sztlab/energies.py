"""Additive energies, their fractional variants and correlation tensors.

For finite sets A_1, ..., A_k the common energy used here is

    E_k(A_1, ..., A_k) = sum_x prod_j (A_j o A_j)(x),

where (A o A)(x) counts pairs a' - a = x.  E_2(A, A) is the classical
additive energy.  The order-(k+1) correlation tensor of sets Q, A_2, ...,
A_{k+1} is

    C(x_1, ..., x_k) = #{z in Q : z + x_j in A_{j+1} for all j},

and its square sum equals E_{k+1}(Q, A_2, ..., A_{k+1}); that identity is
the main cross-check between the tensor and energy layers.

Integral energies are exact ints; fractional ones are floats accumulated
with ``math.fsum`` so results do not depend on iteration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .errors import BudgetError, EmptySetError
from .sets import FiniteRealSet, Rational, convolve_minus

DEFAULT_ENUM_BUDGET = 10**8

__all__ = [
    "CorrelationTensor",
    "energy_k",
    "energy_fractional",
    "mixed_energy",
    "correlation_tensor",
    "weighted_corr",
    "energy_bruteforce",
    "DEFAULT_ENUM_BUDGET",
]


def _require_sets(sets: Sequence[FiniteRealSet], minimum: int) -> None:
    if len(sets) < minimum:
        raise ValueError(f"need at least {minimum} sets, got {len(sets)}")
    for s in sets:
        if not len(s):
            raise EmptySetError("energies require nonempty sets")


def energy_k(sets: Sequence[FiniteRealSet]) -> int:
    """Exact E_k of the given sets: sum over x of prod_j (A_j o A_j)(x).

    With k = 2 and equal arguments this is the classical additive energy;
    ``energy_k([A, B])`` is the mixed energy E(A, B) counting quadruples
    with a - a' = b - b'.
    """
    _require_sets(sets, 2)
    corrs = [convolve_minus(s, s) for s in sets]
    base = min(corrs, key=len)
    total = 0
    for x, count in base.items():
        term = count
        for other in corrs:
            if other is base:
                continue
            c = other[x]
            if not c:
                term = 0
                break
            term *= c
        total += term
    return total


def energy_fractional(a: FiniteRealSet, k: float) -> float:
    """sum_x (A o A)(x)**k for real k > 0, as a float.

    For integer k this agrees with ``energy_k([a] * k)`` up to rounding;
    tests assert the agreement exactly for small instances.
    """
    if not k > 0:
        raise ValueError("fractional exponent must be positive")
    if not len(a):
        raise EmptySetError("energies require nonempty sets")
    corr = convolve_minus(a, a)
    return math.fsum(float(c) ** k for _, c in corr.items())


def mixed_energy(
    x: FiniteRealSet, y: FiniteRealSet, z: FiniteRealSet, w: FiniteRealSet
) -> int:
    """Exact sum over t of (X o Y)(t) * (Z o W)(t).

    The pairing is taken literally from the argument order, so both
    conventions for four-set energies are available by reordering:
    ``mixed_energy(A, A, B, B)`` is E(A, B) while ``mixed_energy(A, B, A, B)``
    sums the squared cross-correlation.
    """
    _require_sets([x, y, z, w], 4)
    first = convolve_minus(x, y)
    second = convolve_minus(z, w)
    if len(second) < len(first):
        first, second = second, first
    return sum(c * second[t] for t, c in first.items() if second[t])


@dataclass(frozen=True)
class CorrelationTensor:
    """Order-k correlation tensor with sparse nonzero entries.

    ``order`` is the number of shift coordinates k; ``entries`` maps shift
    tuples (x_1, ..., x_k) to positive counts.
    """

    order: int
    entries: Mapping[tuple[Rational, ...], int]

    def entry(self, key: tuple[Rational, ...]) -> int:
        if len(key) != self.order:
            raise ValueError(f"key must have {self.order} coordinates")
        return self.entries.get(key, 0)

    def square_sum(self) -> int:
        """sum of squared entries; equals E_{k+1} of the defining sets."""
        return sum(v * v for v in self.entries.values())

    def total_mass(self) -> int:
        return sum(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


def correlation_tensor(
    sets: Sequence[FiniteRealSet], budget: int = DEFAULT_ENUM_BUDGET
) -> CorrelationTensor:
    """Correlation tensor of ``sets = [Q, A_2, ..., A_{k+1}]``.

    Entry (x_1, ..., x_k) counts z in Q with z + x_j in A_{j+1} for all j.
    The enumeration cost |Q| * prod |A_j| is checked against ``budget``
    before any work happens.
    """
    _require_sets(sets, 2)
    base, rest = sets[0], sets[1:]
    cost = len(base)
    for s in rest:
        cost *= len(s)
    if cost > budget:
        raise BudgetError("correlation tensor enumeration too large", required=cost)
    entries: dict[tuple[Rational, ...], int] = {}
    for combo in product(*rest):
        for z in base:
            key = tuple(v - z for v in combo)
            entries[key] = entries.get(key, 0) + 1
    return CorrelationTensor(order=len(rest), entries=entries)


def weighted_corr(x: FiniteRealSet, y: FiniteRealSet, p: float, q: float) -> float:
    """sum over t of (X o X)(t)**p * (Y o Y)(t)**q over the common support.

    With p = q = 1 this coincides with ``mixed_energy(x, x, y, y)``.
    """
    if not (p > 0 and q > 0):
        raise ValueError("weight exponents must be positive")
    _require_sets([x, y], 2)
    cx = convolve_minus(x, x)
    cy = convolve_minus(y, y)
    if len(cy) < len(cx):
        cx, cy, p, q = cy, cx, q, p
    return math.fsum(
        float(c) ** p * float(cy[t]) ** q for t, c in cx.items() if cy[t]
    )


def energy_bruteforce(
    sets: Sequence[FiniteRealSet], budget: int = DEFAULT_ENUM_BUDGET
) -> int:
    """E_k by direct enumeration of solution tuples, for cross-checking.

    Counts 2k-tuples (a_1, a_1', ..., a_k, a_k') with a_j' - a_j equal for
    all j, by enumerating the pairs of the first set and scanning each
    other set for partners at the forced shift.  Never builds a
    multiplicity map, so it is an independent oracle for :func:`energy_k`.
    The worst-case cost prod_j |A_j|^2 is checked against ``budget``.
    """
    _require_sets(sets, 2)
    cost = 1
    for s in sets:
        cost *= len(s) * len(s)
    if cost > budget:
        raise BudgetError("brute-force energy enumeration too large", required=cost)
    first, rest = sets[0], sets[1:]
    members = [frozenset(s) for s in rest]
    total = 0
    for a in first:
        for a2 in first:
            shift = a2 - a
            ways = 1
            for s, mem in zip(rest, members):
                hits = 0
                for b in s:
                    if b + shift in mem:
                        hits += 1
                if not hits:
                    ways = 0
                    break
                ways *= hits
            total += ways
    return total


def restricted_minus_counts(
    s: FiniteRealSet, points: Sequence[Rational]
) -> dict[Rational, int]:
    """(S o S) evaluated only at the given points, by membership scans.

    Cheaper than the full correlation when S is large but few evaluation
    points are needed (cost |points| * |S|).
    """
    if not len(s):
        raise EmptySetError("correlation of the empty set is undefined")
    members = frozenset(s)
    out: dict[Rational, int] = {}
    for x in points:
        count = 0
        for a in s:
            if a + x in members:
                count += 1
        out[x] = count
    return out
