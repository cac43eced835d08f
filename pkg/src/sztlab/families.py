"""Seeded generators for the structured set families used in sweeps.

All generators are deterministic functions of (kind, n, seed, params).
Randomness comes from a fixed, documented xorshift64* generator so that
identical specs reproduce identical sets on any platform, independent of
Python's hash seed or stdlib RNG evolution.

Kinds:

* ``arithmetic-progression``: start + i * step;
* ``geometric-progression``: start * ratio^i, exact rationals;
* ``convex-squares`` / ``convex-cubes``: (i + 1)^2 and (i + 1)^3;
* ``convex-random-gaps``: cumulative sums of strictly increasing random
  gaps, the generic convex sets of the sweeps;
* ``convex-image``: a convex map applied to 1 .. n;
* ``random-uniform``: n distinct integers from a range, by seeded
  rejection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import FamilyError, MapDomainError
from .sets import FiniteRealSet, Rational, as_rational, make_set

__all__ = [
    "FamilySpec",
    "XorShift64Star",
    "generate",
    "apply_convex_map",
    "list_family_kinds",
    "list_map_ids",
    "CONVEX_MAP_IDS",
    "FAMILY_KINDS",
]

_MASK = (1 << 64) - 1


class XorShift64Star:
    """xorshift64* with the standard 2685821657736338717 multiplier.

    The update is x ^= x >> 12; x ^= x << 25 (mod 2^64); x ^= x >> 27;
    output is x * 2685821657736338717 mod 2^64.  A zero seed is remapped
    to the odd constant 0x9E3779B97F4A7C15 since the all-zero state is a
    fixed point.
    """

    MULTIPLIER = 2685821657736338717

    def __init__(self, seed: int) -> None:
        state = seed & _MASK
        self._state = state if state else 0x9E3779B97F4A7C15

    def next_word(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * self.MULTIPLIER) & _MASK

    def below(self, bound: int) -> int:
        """Uniform-ish value in [0, bound) by modulo reduction.

        The modulo bias is negligible for the small bounds used here and
        keeps the stream spec simple enough to reimplement exactly.
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_word() % bound


@dataclass(frozen=True)
class FamilySpec:
    """Deterministic description of one generated set."""

    kind: str
    n: int
    seed: int = 0
    params: Mapping[str, Rational | str] = field(default_factory=dict)


def _param(spec: FamilySpec, key: str, default: Rational) -> Rational:
    raw = spec.params.get(key, default)
    try:
        return as_rational(raw)
    except (TypeError, ValueError) as exc:
        raise FamilyError(f"parameter {key!r} is not a rational: {raw!r}") from exc


def _gen_arithmetic(spec: FamilySpec) -> FiniteRealSet:
    start = _param(spec, "start", 0)
    step = _param(spec, "step", 1)
    if step == 0:
        raise FamilyError("arithmetic progression needs a nonzero step")
    return make_set(start + i * step for i in range(spec.n))


def _gen_geometric(spec: FamilySpec) -> FiniteRealSet:
    start = _param(spec, "start", 1)
    ratio = _param(spec, "ratio", 2)
    if start == 0:
        raise FamilyError("geometric progression needs a nonzero start")
    if ratio == 0 or ratio == 1 or ratio == -1:
        raise FamilyError("geometric ratio must differ from 0 and +-1")
    values = []
    current = Fraction(start)
    for _ in range(spec.n):
        values.append(as_rational(current))
        current *= Fraction(ratio)
    return make_set(values)


def _gen_squares(spec: FamilySpec) -> FiniteRealSet:
    return make_set((i + 1) ** 2 for i in range(spec.n))


def _gen_cubes(spec: FamilySpec) -> FiniteRealSet:
    return make_set((i + 1) ** 3 for i in range(spec.n))


def _gen_random_gaps(spec: FamilySpec) -> FiniteRealSet:
    span = _param(spec, "span", 8)
    start = _param(spec, "start", 0)
    if not isinstance(span, int) or span < 1:
        raise FamilyError("gap span must be a positive integer")
    rng = XorShift64Star(spec.seed)
    values = [start]
    gap = 1 + rng.below(span)
    for _ in range(spec.n - 1):
        values.append(values[-1] + gap)
        gap += 1 + rng.below(span)
    return make_set(values)


def _gen_convex_image(spec: FamilySpec) -> FiniteRealSet:
    map_id = spec.params.get("map", "square")
    if not isinstance(map_id, str):
        raise FamilyError("convex-image map parameter must be a string")
    base_start = _param(spec, "base_start", 1)
    if not isinstance(base_start, int) or base_start < 1:
        raise FamilyError("convex-image base_start must be a positive integer")
    base = make_set(range(base_start, base_start + spec.n))
    return apply_convex_map(base, map_id)


def _gen_random_uniform(spec: FamilySpec) -> FiniteRealSet:
    low = _param(spec, "low", 0)
    high = _param(spec, "high", 100 * spec.n)
    if not isinstance(low, int) or not isinstance(high, int):
        raise FamilyError("random-uniform bounds must be integers")
    width = high - low + 1
    if width < spec.n:
        raise FamilyError(f"range of size {width} cannot hold {spec.n} distinct values")
    rng = XorShift64Star(spec.seed)
    chosen: set[int] = set()
    while len(chosen) < spec.n:
        chosen.add(low + rng.below(width))
    return make_set(chosen)


_GENERATORS = {
    "arithmetic-progression": _gen_arithmetic,
    "geometric-progression": _gen_geometric,
    "convex-squares": _gen_squares,
    "convex-cubes": _gen_cubes,
    "convex-random-gaps": _gen_random_gaps,
    "convex-image": _gen_convex_image,
    "random-uniform": _gen_random_uniform,
}

FAMILY_KINDS = tuple(sorted(_GENERATORS))


def generate(spec: FamilySpec) -> FiniteRealSet:
    """Generate the set described by ``spec``; |result| is exactly n."""
    if spec.kind not in _GENERATORS:
        raise FamilyError(
            f"unknown family kind {spec.kind!r}; known: {', '.join(FAMILY_KINDS)}"
        )
    if spec.n < 1:
        raise FamilyError("family size must be at least 1")
    result = _GENERATORS[spec.kind](spec)
    if len(result) != spec.n:
        raise FamilyError(
            f"{spec.kind} produced {len(result)} distinct elements instead of {spec.n}"
        )
    return result


def _map_square(x: Rational) -> Rational:
    if x <= 0:
        raise MapDomainError("square map needs strictly positive input")
    return as_rational(x * x)


def _map_cube(x: Rational) -> Rational:
    if x <= 0:
        raise MapDomainError("cube map needs strictly positive input")
    return as_rational(x * x * x)


def _map_reciprocal(x: Rational) -> Rational:
    if x <= 0:
        raise MapDomainError("reciprocal map needs strictly positive input")
    return as_rational(Fraction(1, 1) / x)


def _dyadic_exponent(x: Rational) -> int:
    frac = Fraction(x)
    num, den = frac.numerator, frac.denominator
    if num <= 0:
        raise MapDomainError("dyadic-log needs positive powers of two")
    if den == 1:
        if num & (num - 1):
            raise MapDomainError(f"{x} is not a power of two")
        return num.bit_length() - 1
    if num != 1 or den & (den - 1):
        raise MapDomainError(f"{x} is not a power of two")
    return -(den.bit_length() - 1)


_CONVEX_MAPS = {
    "square": _map_square,
    "cube": _map_cube,
    "reciprocal": _map_reciprocal,
    "dyadic-log": _dyadic_exponent,
}

CONVEX_MAP_IDS = tuple(sorted(_CONVEX_MAPS))


def apply_convex_map(a: FiniteRealSet, map_id: str) -> FiniteRealSet:
    """Apply an injective convex map elementwise; |f(A)| = |A|.

    Maps: ``square`` and ``cube`` (positive input), ``reciprocal``
    (positive input, exact fractions), ``dyadic-log`` (exact base-2
    logarithm of powers of two).  Raises :class:`MapDomainError` off
    the domain.
    """
    if map_id not in _CONVEX_MAPS:
        raise FamilyError(
            f"unknown map {map_id!r}; known: {', '.join(CONVEX_MAP_IDS)}"
        )
    func = _CONVEX_MAPS[map_id]
    return make_set(func(x) for x in a)


def list_family_kinds() -> tuple[str, ...]:
    return FAMILY_KINDS


def list_map_ids() -> tuple[str, ...]:
    return CONVEX_MAP_IDS
