"""Weighted convolution operators on finite sets and their spectra.

For a nonnegative weight g and sets A, B the two operator kinds are

    difference:  M[x, y] = g(x - y)   for x in A, y in B,
    sum:         M[x, y] = g(x + y)   for x in A, y in B,

acting on functions supported on B.  The difference kind is symmetric on
A = B exactly when g is even (g(-x) = g(x)); the sum kind is symmetric on
A = B for every g.  Two identities anchor the checks here:

* action identity: <T a, b> equals sum_z g(z) w(z) where w collects the
  pair weights b(x) a(y) at z = x - y (difference) or z = x + y (sum);
* rank-one splitting: the sum operator with g the indicator of a set
  containing A + B is the all-ones matrix, with top singular value
  sqrt(|A| |B|) and normalized-indicator singular vectors.

Matrices are dense float64; spectra come from the Jacobi routines in
:mod:`sztlab.linalg`.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ContainmentError, EmptySetError
from .linalg import singular_triplets, symmetric_eigen
from .report import InequalityReport, evaluate_inequality
from .sets import (
    FiniteRealSet,
    MultiplicityMap,
    Rational,
    as_rational,
    convolve_minus,
    rational_str,
    sumset,
)

DENSE_BUDGET = 4_000_000

__all__ = [
    "WeightFunction",
    "DenseOperator",
    "SpectrumResult",
    "build_operator",
    "eigen_spectrum",
    "singular_spectrum",
    "apply_action",
    "action_via_convolution",
    "verify_rank_one_lemma",
    "verify_action_g_bound",
    "operator_to_csv",
    "spectrum_to_csv",
    "DENSE_BUDGET",
]


class WeightFunction:
    """A finitely supported nonnegative weight g on the rationals.

    Values are float64; off-support lookups return 0.  The constructors
    cover the weights used by the verification harness: set indicators,
    powers of multiplicity maps, and point masses.
    """

    __slots__ = ("label", "_values")

    def __init__(self, values: Mapping[Rational, float], label: str = "custom") -> None:
        cleaned: dict[Rational, float] = {}
        for key, raw in values.items():
            v = float(raw)
            if v < 0.0 or math.isnan(v):
                raise ValueError(f"weight at {key!r} must be nonnegative, got {raw!r}")
            if v:
                cleaned[as_rational(key)] = v
        self._values = cleaned
        self.label = label

    @classmethod
    def indicator(cls, s: FiniteRealSet, label: str | None = None) -> "WeightFunction":
        if not len(s):
            raise EmptySetError("indicator weight needs a nonempty set")
        return cls({x: 1.0 for x in s}, label or f"ind[{len(s)}]")

    @classmethod
    def from_multiplicities(
        cls, counts: MultiplicityMap, power: float = 1.0, label: str | None = None
    ) -> "WeightFunction":
        if power <= 0:
            raise ValueError("multiplicity power must be positive")
        values = {x: float(c) ** power for x, c in counts.items()}
        return cls(values, label or f"mult^{power:g}")

    @classmethod
    def point_mass(cls, x: Rational | str, weight: float = 1.0) -> "WeightFunction":
        return cls({as_rational(x): weight}, f"delta[{rational_str(as_rational(x))}]")

    def value(self, x: Rational) -> float:
        return self._values.get(x, 0.0)

    def __len__(self) -> int:
        return len(self._values)

    def support(self) -> FiniteRealSet:
        return FiniteRealSet(self._values.keys())

    @property
    def is_hermitian(self) -> bool:
        """True when g(-x) = g(x) exactly for every support point."""
        return all(self._values.get(-x) == v for x, v in self._values.items())

    def norm_sq(self) -> float:
        """Squared l2 norm, exact for indicator weights."""
        return math.fsum(v * v for v in self._values.values())

    def sup_norm(self) -> float:
        return max(self._values.values(), default=0.0)

    def __repr__(self) -> str:
        return f"WeightFunction({self.label}, support={len(self)})"


@dataclass
class DenseOperator:
    """A materialised operator matrix with its defining data.

    Rows are indexed by ``row_set`` in sorted order, columns by
    ``col_set``; the operator acts on functions over ``col_set``.
    """

    kind: str
    weight: WeightFunction
    row_set: FiniteRealSet
    col_set: FiniteRealSet
    matrix: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_set), len(self.col_set))

    @property
    def is_symmetric(self) -> bool:
        if self.row_set != self.col_set:
            return False
        return self.kind == "sum" or self.weight.is_hermitian


def build_operator(
    g: WeightFunction,
    a: FiniteRealSet,
    b: FiniteRealSet | None = None,
    kind: str = "difference",
    budget: int = DENSE_BUDGET,
) -> DenseOperator:
    """Materialise the difference- or sum-kind operator for weight g.

    ``a`` indexes rows, ``b`` (default ``a``) columns.  The dense size
    |A| * |B| is checked against ``budget`` before allocation.
    """
    if kind not in ("difference", "sum"):
        raise ValueError(f"kind must be 'difference' or 'sum', got {kind!r}")
    if b is None:
        b = a
    if not len(a) or not len(b):
        raise EmptySetError("operators need nonempty index sets")
    cells = len(a) * len(b)
    if cells > budget:
        from .errors import BudgetError

        raise BudgetError("dense operator too large", required=cells)
    rows = a.elements
    cols = b.elements
    matrix = np.zeros((len(rows), len(cols)))
    if kind == "difference":
        for i, x in enumerate(rows):
            for j, y in enumerate(cols):
                matrix[i, j] = g.value(as_rational(x - y))
    else:
        for i, x in enumerate(rows):
            for j, y in enumerate(cols):
                matrix[i, j] = g.value(as_rational(x + y))
    return DenseOperator(kind=kind, weight=g, row_set=a, col_set=b, matrix=matrix)


@dataclass
class SpectrumResult:
    """Sorted spectrum of an operator.

    For ``kind == "eigen"``, ``values`` are eigenvalues (descending) and
    ``vectors`` columns the eigenvectors.  For ``kind == "singular"``,
    ``values`` are singular values, ``vectors`` the right singular vectors
    (on the column set) and ``left_vectors`` the left ones (on the row
    set).  Ties keep solver index order; tests compare values, never
    vector identity at degenerate values.
    """

    kind: str
    values: np.ndarray
    vectors: np.ndarray
    left_vectors: np.ndarray | None = None
    sweeps: int = 0

    def top_value(self) -> float:
        return float(self.values[0])

    def vector(self, j: int = 0) -> np.ndarray:
        return self.vectors[:, j]


def eigen_spectrum(op: DenseOperator, tol: float = 1e-12) -> SpectrumResult:
    """Full eigendecomposition; requires a symmetric operator."""
    if not op.is_symmetric:
        raise ValueError(
            "operator is not symmetric (difference kind needs an even weight); "
            "use singular_spectrum"
        )
    values, vectors, sweeps = symmetric_eigen(op.matrix, tol=tol)
    return SpectrumResult(kind="eigen", values=values, vectors=vectors, sweeps=sweeps)


def singular_spectrum(op: DenseOperator, tol: float = 1e-12) -> SpectrumResult:
    """Singular value decomposition of any dense operator."""
    u, s, v, sweeps = singular_triplets(op.matrix, tol=tol)
    return SpectrumResult(
        kind="singular", values=s, vectors=v, left_vectors=u, sweeps=sweeps
    )


def apply_action(op: DenseOperator, a: np.ndarray, b: np.ndarray) -> float:
    """Bilinear action <T a, b> = b @ (M @ a), matrix route.

    ``a`` lives on the column set, ``b`` on the row set.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (len(op.col_set),):
        raise ValueError(f"vector a must have shape ({len(op.col_set)},)")
    if b.shape != (len(op.row_set),):
        raise ValueError(f"vector b must have shape ({len(op.row_set)},)")
    return float(b @ (op.matrix @ a))


def action_via_convolution(op: DenseOperator, a: np.ndarray, b: np.ndarray) -> float:
    """The same bilinear action computed through the weight's argument.

    Collects the pair weights b(x) a(y) by the value z at which g is
    evaluated (x - y for the difference kind, x + y for the sum kind) and
    returns sum_z g(z) w(z).  Independent of the matrix route; the two
    agree to high relative accuracy and the tests pin that down.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (len(op.col_set),) or b.shape != (len(op.row_set),):
        raise ValueError("vector shapes must match the operator index sets")
    pair_weight: dict[Rational, list[float]] = {}
    difference = op.kind == "difference"
    for i, x in enumerate(op.row_set):
        bx = float(b[i])
        if bx == 0.0:
            continue
        for j, y in enumerate(op.col_set):
            ay = float(a[j])
            if ay == 0.0:
                continue
            z = as_rational(x - y) if difference else as_rational(x + y)
            pair_weight.setdefault(z, []).append(bx * ay)
    terms = []
    for z in sorted(pair_weight):
        gz = op.weight.value(z)
        if gz:
            terms.append(gz * math.fsum(pair_weight[z]))
    return math.fsum(terms)


def verify_rank_one_lemma(
    a: FiniteRealSet,
    b: FiniteRealSet,
    s: FiniteRealSet | None = None,
    tolerance: float = 1e-9,
    vector_tolerance: float = 1e-8,
) -> InequalityReport:
    """Check the rank-one splitting of the sum operator with g = ind(S).

    With S containing A + B the matrix is all ones, so the top singular
    value must equal sqrt(|A| |B|), the second must vanish (relative to
    the first), and both top singular vectors must match the normalized
    indicators of A and B coordinatewise.
    """
    full = sumset(a, b)
    if s is None:
        s = full
    else:
        missing = [x for x in full if x not in s]
        if missing:
            raise ContainmentError(
                f"S must contain A + B; missing {rational_str(missing[0])}"
            )
    op = build_operator(WeightFunction.indicator(s, "ind[S]"), a, b, kind="sum")
    spec = singular_spectrum(op)
    lam1 = float(spec.values[0])
    lam2 = float(spec.values[1]) if len(spec.values) > 1 else 0.0
    expected = math.sqrt(len(a) * len(b))
    assert spec.left_vectors is not None
    u_dev = float(np.max(np.abs(spec.left_vectors[:, 0] - 1.0 / math.sqrt(len(a)))))
    v_dev = float(np.max(np.abs(spec.vectors[:, 0] - 1.0 / math.sqrt(len(b)))))
    value_ok = abs(lam1 - expected) <= tolerance * expected
    split_ok = lam2 <= tolerance * lam1 if lam1 > 0 else lam2 == 0.0
    vectors_ok = u_dev <= vector_tolerance and v_dev <= vector_tolerance
    report = evaluate_inequality(
        statement_id="rank-one-sum-operator",
        instance={
            "a_size": len(a),
            "b_size": len(b),
            "s_size": len(s),
            "second_singular_value": lam2,
            "left_vector_deviation": u_dev,
            "right_vector_deviation": v_dev,
        },
        lhs=lam1,
        rhs=expected,
        direction="eq",
        tolerance=tolerance,
    )
    report.passed = bool(value_ok and split_ok and vectors_ok)
    return report


def verify_action_g_bound(
    a: FiniteRealSet,
    g: WeightFunction,
    kind: str = "difference",
    assert_constant: float = 1.0,
    tolerance: float = 1e-9,
) -> InequalityReport:
    """Check the main-eigenfunction action bound for the weight g on A.

    With f1 the top eigenfunction of the (symmetric) g-operator on A and
    mu1 its top eigenvalue, the self-correlation operator satisfies

        <T^{AoA} f1, f1>  >=  mu1^3 / ||g||_2^2.

    Requires a symmetric operator (difference kind needs even g) and a
    weight that is not identically zero.
    """
    if not len(g):
        raise ValueError("action bound needs a nonzero weight")
    op = build_operator(g, a, a, kind=kind)
    if not op.is_symmetric:
        raise ValueError("action bound needs a symmetric operator; weight is not even")
    spec = eigen_spectrum(op)
    mu1 = spec.top_value()
    f1 = spec.vector(0)
    corr = WeightFunction.from_multiplicities(convolve_minus(a, a), 1.0, "self-corr")
    t_corr = build_operator(corr, a, a, kind="difference")
    lhs = apply_action(t_corr, f1, f1)
    rhs = mu1**3 / g.norm_sq()
    return evaluate_inequality(
        statement_id="action-bound",
        instance={
            "a_size": len(a),
            "kind": kind,
            "weight": g.label,
            "mu1": mu1,
            "weight_norm_sq": g.norm_sq(),
        },
        lhs=lhs,
        rhs=rhs,
        direction="ge",
        assert_constant=assert_constant,
        tolerance=tolerance,
    )


def operator_to_csv(op: DenseOperator) -> str:
    """Render the matrix with element labels on both axes."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"{op.kind}"] + [rational_str(y) for y in op.col_set])
    for i, x in enumerate(op.row_set):
        writer.writerow([rational_str(x)] + [repr(float(v)) for v in op.matrix[i]])
    return buf.getvalue()


def spectrum_to_csv(spec: SpectrumResult) -> str:
    """Render spectrum values, one per row, with their index."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "value"])
    for i, v in enumerate(spec.values):
        writer.writerow([str(i), repr(float(v))])
    return buf.getvalue()
