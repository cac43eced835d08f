"""Popular-sum tail profiles and tail-based smallness constants.

A pair (A, B) has tail profile tau -> |{x : (A * B)(x) >= tau}| where
(A * B) counts representations x = a + b.  The smallness constant of a
set A against exponent alpha is the least c making

    tail(tau) <= c * |B|^alpha / tau^3

hold over probe sets B and all thresholds tau; :func:`estimate_c` reports
the exact maximum of tail(tau) * tau^3 / |B|^alpha over a probe family,
so the bound holds with constant 1 at the returned value by construction.

For structured families the constant has closed forms: |A| for convex
sets, q(A) = min_C |A + C|^2 / |C| for convex images, and
(|AA| / |A|)^2 |A| under small multiplicative doubling;
:func:`family_c` evaluates those exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptySetError
from .sets import (
    FiniteRealSet,
    Rational,
    convolve_plus,
    is_convex,
    make_set,
    product_set,
    sumset,
)

__all__ = [
    "TailProfile",
    "CEstimate",
    "tail_profile",
    "estimate_c",
    "q_of",
    "q_prime",
    "family_c",
    "default_probes",
]


@dataclass(frozen=True)
class TailProfile:
    """Tail counts of a sum-representation function.

    ``pairs[t - 1]`` is (t, count of x with multiplicity >= t) for
    t = 1 .. min(|A|, |B|), the largest possible multiplicity.
    """

    pairs: tuple[tuple[int, int], ...]

    def tail(self, tau: int) -> int:
        if tau < 1:
            raise ValueError("threshold must be at least 1")
        if tau > len(self.pairs):
            return 0
        return self.pairs[tau - 1][1]

    def max_multiplicity(self) -> int:
        for tau, count in reversed(self.pairs):
            if count:
                return tau
        return 0

    def support_size(self) -> int:
        return self.pairs[0][1] if self.pairs else 0


def tail_profile(a: FiniteRealSet, b: FiniteRealSet) -> TailProfile:
    """Exact tail profile of (A * B) for tau = 1 .. min(|A|, |B|)."""
    if not len(a) or not len(b):
        raise EmptySetError("tail profile needs nonempty sets")
    counts = convolve_plus(a, b)
    top = min(len(a), len(b))
    histogram = [0] * (top + 1)
    for _, mult in counts.items():
        histogram[min(mult, top)] += 1
    pairs = []
    running = 0
    for tau in range(top, 0, -1):
        running += histogram[tau]
        pairs.append((tau, running))
    pairs.reverse()
    return TailProfile(pairs=tuple(pairs))


@dataclass(frozen=True)
class CEstimate:
    """Empirical smallness constant and the probe/threshold attaining it.

    ``value`` = max over probes B and thresholds tau of
    tail(tau) * tau^3 / |B|^alpha, as an exact Fraction when alpha is an
    integer.  ``per_probe`` records each probe's own maximum.
    """

    value: Fraction
    alpha: float
    witness_probe: int
    witness_tau: int
    witness_tail: int
    per_probe: tuple[Fraction, ...]

    def as_float(self) -> float:
        return float(self.value)


def _probe_score(tail: int, tau: int, b_size: int, alpha: float) -> Fraction:
    """tail * tau^3 / |B|^alpha; exact for integer alpha, else float-backed."""
    if float(alpha).is_integer():
        return Fraction(tail * tau**3, b_size ** int(alpha))
    return Fraction(tail * tau**3) / Fraction(float(b_size) ** float(alpha))


def default_probes(a: FiniteRealSet) -> tuple[FiniteRealSet, ...]:
    """Deterministic probe family: A itself plus structured sets of |A|.

    The structured probes are the first |A| naturals, squares and cubes;
    duplicates of A are harmless.
    """
    n = len(a)
    ap = make_set(range(n))
    squares = make_set((i + 1) ** 2 for i in range(n))
    cubes = make_set((i + 1) ** 3 for i in range(n))
    return (a, ap, squares, cubes)


def estimate_c(
    a: FiniteRealSet,
    probes: Sequence[FiniteRealSet] | None = None,
    alpha: float = 2.0,
) -> CEstimate:
    """Scan probes for the largest tail(tau) * tau^3 / |B|^alpha ratio.

    Exact arithmetic throughout for integer alpha.  The result is the
    least constant making the tail bound hold with constant 1 across the
    scanned probes; it lower-bounds the true smallness constant of A.
    """
    if not len(a):
        raise EmptySetError("estimate_c needs a nonempty set")
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    probe_list = tuple(probes) if probes is not None else default_probes(a)
    if not probe_list:
        raise ValueError("need at least one probe set")
    best = Fraction(0)
    witness = (0, 1, 0)
    per_probe: list[Fraction] = []
    for idx, b in enumerate(probe_list):
        if not len(b):
            raise EmptySetError("probe sets must be nonempty")
        profile = tail_profile(a, b)
        probe_best = Fraction(0)
        for tau, tail in profile.pairs:
            if not tail:
                continue
            score = _probe_score(tail, tau, len(b), alpha)
            if score > probe_best:
                probe_best = score
            if score > best:
                best = score
                witness = (idx, tau, tail)
        per_probe.append(probe_best)
    return CEstimate(
        value=best,
        alpha=alpha,
        witness_probe=witness[0],
        witness_tau=witness[1],
        witness_tail=witness[2],
        per_probe=tuple(per_probe),
    )


def q_of(a: FiniteRealSet, candidates: Sequence[FiniteRealSet]) -> Fraction:
    """min over candidate sets C of |A + C|^2 / |C|, exact."""
    if not len(a):
        raise EmptySetError("q needs a nonempty set")
    if not candidates:
        raise ValueError("need at least one candidate set")
    best: Fraction | None = None
    for c in candidates:
        if not len(c):
            raise EmptySetError("candidate sets must be nonempty")
        score = Fraction(len(sumset(a, c)) ** 2, len(c))
        if best is None or score < best:
            best = score
    assert best is not None
    return best


def q_prime(
    a: FiniteRealSet, shift: Rational | str, candidates: Sequence[FiniteRealSet]
) -> Fraction:
    """min over candidates C of |(A + shift) * C|^2 / |C|, exact.

    The shift must avoid 0 in A + shift, otherwise products collapse.
    """
    if not len(a):
        raise EmptySetError("q' needs a nonempty set")
    if not candidates:
        raise ValueError("need at least one candidate set")
    shifted = a.translate(shift)
    if 0 in shifted:
        raise ValueError("shift places 0 inside the set; products degenerate")
    best: Fraction | None = None
    for c in candidates:
        if not len(c):
            raise EmptySetError("candidate sets must be nonempty")
        score = Fraction(len(product_set(shifted, c)) ** 2, len(c))
        if best is None or score < best:
            best = score
    assert best is not None
    return best


def family_c(
    a: FiniteRealSet,
    kind: str,
    candidates: Sequence[FiniteRealSet] | None = None,
) -> Fraction:
    """Closed-form smallness constant for a structured family, exact.

    * ``"convex"``: |A| (requires strictly increasing gaps);
    * ``"convex-image"``: q(A) over the given candidate sets;
    * ``"small-product"``: (|AA| / |A|)^2 |A|.
    """
    if kind == "convex":
        if not is_convex(a):
            raise ValueError("set is not convex; cannot use the convex constant")
        return Fraction(len(a))
    if kind == "convex-image":
        if candidates is None:
            raise ValueError("convex-image constant needs candidate sets for q")
        return q_of(a, candidates)
    if kind == "small-product":
        doubling = Fraction(len(product_set(a, a)), len(a))
        return doubling * doubling * len(a)
    raise ValueError(f"unknown family constant kind {kind!r}")
