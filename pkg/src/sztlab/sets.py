"""Finite sets of exact rationals and their additive-combinatorial primitives.

Elements are plain ``int`` or ``fractions.Fraction`` values; no floating
point enters any set or multiplicity computation.  A Fraction with
denominator 1 is canonicalised to ``int`` so that equal rationals hash and
compare identically regardless of how they were written.

The multiplicity maps produced here follow the usual conventions for
indicator functions of finite sets:

* ``convolve_plus(A, B)`` maps x to #{(a, b) in A x B : a + b = x}, so its
  support is the sumset A + B.
* ``convolve_minus(A, B)`` maps x to #{(a, b) in A x B : b - a = x}, so its
  support is the difference set B - A and the self-correlation
  ``convolve_minus(A, A)`` is symmetric with value |A| at zero.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Union

from .errors import EmptySetError

Rational = Union[int, Fraction]

__all__ = [
    "Rational",
    "as_rational",
    "rational_str",
    "FiniteRealSet",
    "MultiplicityMap",
    "make_set",
    "sumset",
    "difference_set",
    "product_set",
    "convolve_plus",
    "convolve_minus",
    "is_convex",
    "level_set",
    "parse_set_text",
    "load_set_file",
    "save_set_file",
]


def as_rational(value: Rational | str) -> Rational:
    """Canonicalise a value to ``int`` or ``Fraction`` in lowest terms.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"n"``.
    Floats are rejected: exactness is a contract of this module.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not valid set elements")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return int(frac) if frac.denominator == 1 else frac
    raise TypeError(f"expected int, Fraction or string, got {type(value).__name__}")


def rational_str(value: Rational) -> str:
    """Render a rational as ``"n"`` or ``"p/q"`` (the set-file format)."""
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


class FiniteRealSet:
    """An immutable finite set of exact rationals, stored sorted.

    Public construction goes through :func:`make_set`, which rejects empty
    input.  Operations that can legitimately produce the empty set (level
    sets of a multiplicity map) use the internal factory, so an empty
    ``FiniteRealSet`` can exist but never enters an operation that requires
    a nonempty set without raising :class:`EmptySetError`.
    """

    __slots__ = ("_elements", "_members")

    def __init__(self, elements: Iterable[Rational | str] = ()) -> None:
        canon = sorted({as_rational(v) for v in elements})
        self._elements: tuple[Rational, ...] = tuple(canon)
        self._members: frozenset = frozenset(canon)

    @classmethod
    def _from_sorted(cls, elements: tuple[Rational, ...]) -> "FiniteRealSet":
        """Trusted factory: ``elements`` must be sorted, canonical, distinct."""
        obj = cls.__new__(cls)
        obj._elements = elements
        obj._members = frozenset(elements)
        return obj

    @property
    def elements(self) -> tuple[Rational, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Rational]:
        return iter(self._elements)

    def __getitem__(self, index: int) -> Rational:
        return self._elements[index]

    def __contains__(self, value: object) -> bool:
        return value in self._members

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FiniteRealSet):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        if len(self) <= 8:
            body = ", ".join(rational_str(v) for v in self)
        else:
            head = ", ".join(rational_str(v) for v in self._elements[:4])
            body = f"{head}, ... ({len(self)} elements), {rational_str(self._elements[-1])}"
        return f"FiniteRealSet({{{body}}})"

    def min(self) -> Rational:
        if not self._elements:
            raise EmptySetError("empty set has no minimum")
        return self._elements[0]

    def max(self) -> Rational:
        if not self._elements:
            raise EmptySetError("empty set has no maximum")
        return self._elements[-1]

    def translate(self, shift: Rational | str) -> "FiniteRealSet":
        """Return ``{a + shift : a in self}``."""
        t = as_rational(shift)
        return FiniteRealSet._from_sorted(tuple(as_rational(a + t) for a in self._elements))

    def dilate(self, scale: Rational | str) -> "FiniteRealSet":
        """Return ``{scale * a : a in self}`` for a nonzero scale."""
        s = as_rational(scale)
        if s == 0:
            raise ValueError("dilation by zero collapses the set")
        scaled = [as_rational(s * a) for a in self._elements]
        if s < 0:
            scaled.reverse()
        return FiniteRealSet._from_sorted(tuple(scaled))


class MultiplicityMap:
    """A finitely supported map from rationals to positive integer counts.

    Acts as a function with default value 0 off its support; ``len`` is
    the support size.  Instances are immutable and hashable by content.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[Rational, int]) -> None:
        cleaned: dict[Rational, int] = {}
        for key, value in counts.items():
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"multiplicity at {key!r} must be a nonnegative int")
            if value:
                cleaned[as_rational(key)] = value
        self._counts = cleaned
        self._hash: int | None = None

    def __getitem__(self, point: Rational | str) -> int:
        return self._counts.get(as_rational(point), 0)

    def __len__(self) -> int:
        return len(self._counts)

    def __iter__(self) -> Iterator[Rational]:
        return iter(sorted(self._counts))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiplicityMap):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        pairs = ", ".join(f"{rational_str(k)}: {self._counts[k]}" for k in sorted(self._counts)[:6])
        suffix = ", ..." if len(self._counts) > 6 else ""
        return f"MultiplicityMap({{{pairs}{suffix}}})"

    def items(self) -> Iterator[tuple[Rational, int]]:
        """Yield (point, count) pairs in increasing point order."""
        for key in sorted(self._counts):
            yield key, self._counts[key]

    def support(self) -> FiniteRealSet:
        return FiniteRealSet._from_sorted(tuple(sorted(self._counts)))

    def total_mass(self) -> int:
        return sum(self._counts.values())

    def max_multiplicity(self) -> int:
        return max(self._counts.values(), default=0)


def make_set(values: Iterable[Rational | str]) -> FiniteRealSet:
    """Build a set from values, deduplicating; rejects empty input."""
    result = FiniteRealSet(values)
    if not len(result):
        raise EmptySetError("make_set requires at least one element")
    return result


def _require_nonempty(*sets: FiniteRealSet) -> None:
    for s in sets:
        if not len(s):
            raise EmptySetError("operation requires nonempty sets")


def sumset(a: FiniteRealSet, b: FiniteRealSet) -> FiniteRealSet:
    """Return ``A + B = {x + y : x in A, y in B}``."""
    _require_nonempty(a, b)
    out = {as_rational(x + y) for x in a for y in b}
    return FiniteRealSet._from_sorted(tuple(sorted(out)))


def difference_set(a: FiniteRealSet, b: FiniteRealSet) -> FiniteRealSet:
    """Return ``A - B = {x - y : x in A, y in B}``."""
    _require_nonempty(a, b)
    out = {as_rational(x - y) for x in a for y in b}
    return FiniteRealSet._from_sorted(tuple(sorted(out)))


def product_set(a: FiniteRealSet, b: FiniteRealSet) -> FiniteRealSet:
    """Return ``A * B = {x * y : x in A, y in B}``."""
    _require_nonempty(a, b)
    out = {as_rational(x * y) for x in a for y in b}
    return FiniteRealSet._from_sorted(tuple(sorted(out)))


def convolve_plus(a: FiniteRealSet, b: FiniteRealSet) -> MultiplicityMap:
    """Representation counts of sums: x -> #{(p, q) in A x B : p + q = x}."""
    _require_nonempty(a, b)
    counts: dict[Rational, int] = {}
    for x in a:
        for y in b:
            key = as_rational(x + y)
            counts[key] = counts.get(key, 0) + 1
    return MultiplicityMap(counts)


def convolve_minus(a: FiniteRealSet, b: FiniteRealSet) -> MultiplicityMap:
    """Correlation counts of differences: x -> #{(p, q) in A x B : q - p = x}."""
    _require_nonempty(a, b)
    counts: dict[Rational, int] = {}
    for x in a:
        for y in b:
            key = as_rational(y - x)
            counts[key] = counts.get(key, 0) + 1
    return MultiplicityMap(counts)


def is_convex(a: FiniteRealSet) -> bool:
    """True when consecutive gaps are strictly increasing; needs |A| >= 3."""
    if len(a) < 3:
        raise ValueError("convexity needs at least three elements")
    elems = a.elements
    prev_gap = elems[1] - elems[0]
    for i in range(2, len(elems)):
        gap = elems[i] - elems[i - 1]
        if gap <= prev_gap:
            return False
        prev_gap = gap
    return True


def level_set(counts: MultiplicityMap, threshold: Rational | float) -> FiniteRealSet:
    """Points where the multiplicity is at least ``threshold`` (> 0 required).

    May legitimately be empty; this is the one public constructor of empty
    sets, and downstream operations guard against them explicitly.
    """
    if not threshold > 0:
        raise ValueError("level threshold must be positive")
    kept = tuple(sorted(k for k, v in counts.items() if v >= threshold))
    return FiniteRealSet._from_sorted(kept)


def parse_set_text(text: str) -> FiniteRealSet:
    """Parse the set-file format: one element per line, ``#`` comments.

    Elements are ints or ``p/q`` fractions; duplicates collapse.
    """
    values: list[Rational] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(as_rational(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: cannot parse element {line!r}") from exc
    return make_set(values)


def load_set_file(path: str | Path) -> FiniteRealSet:
    """Load a set from a file in the set-file format."""
    return parse_set_text(Path(path).read_text(encoding="utf-8"))


def save_set_file(path: str | Path, a: FiniteRealSet) -> None:
    """Write a set in the set-file format, one element per line, sorted."""
    body = "\n".join(rational_str(v) for v in a)
    Path(path).write_text(body + "\n", encoding="utf-8")
