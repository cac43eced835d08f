"""Operator construction, Jacobi spectra and the operator-layer checks.

numpy.linalg appears here only as an independent oracle for the
hand-written Jacobi eigensolver and one-sided SVD.
"""

import math

import numpy as np
import pytest

from sztlab.energies import correlation_tensor
from sztlab.errors import BudgetError, ContainmentError, EmptySetError
from sztlab.linalg import singular_triplets, symmetric_eigen
from sztlab.operators import (
    WeightFunction,
    action_via_convolution,
    apply_action,
    build_operator,
    eigen_spectrum,
    operator_to_csv,
    singular_spectrum,
    spectrum_to_csv,
    verify_action_g_bound,
    verify_rank_one_lemma,
)
from sztlab.sets import convolve_minus, make_set, sumset


def _rng(seed):
    return np.random.default_rng(seed)


def _random_set(rng, max_size=12, low=-30, high=30):
    size = int(rng.integers(2, max_size + 1))
    vals = set()
    while len(vals) < size:
        vals.add(int(rng.integers(low, high + 1)))
    return make_set(vals)


class TestWeightFunction:
    def test_indicator(self):
        s = make_set([0, 2])
        g = WeightFunction.indicator(s)
        assert g.value(0) == 1.0 and g.value(1) == 0.0
        assert g.norm_sq() == 2.0
        assert g.sup_norm() == 1.0
        assert len(g) == 2

    def test_hermitian_detection(self):
        sym = WeightFunction({-1: 2.0, 0: 1.0, 1: 2.0})
        asym = WeightFunction({1: 1.0})
        assert sym.is_hermitian
        assert not asym.is_hermitian

    def test_multiplicity_powers(self):
        a = make_set([0, 1, 2])
        g = WeightFunction.from_multiplicities(convolve_minus(a, a), 0.5)
        assert g.value(0) == math.sqrt(3.0)
        assert g.is_hermitian

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            WeightFunction({0: -1.0})

    def test_zero_values_dropped(self):
        g = WeightFunction({0: 0.0, 1: 2.0})
        assert len(g) == 1


class TestBuildOperator:
    def test_self_correlation_matrix(self):
        a = make_set([0, 1, 2])
        g = WeightFunction.from_multiplicities(convolve_minus(a, a))
        op = build_operator(g, a, kind="difference")
        assert op.matrix.tolist() == [[3, 2, 1], [2, 3, 2], [1, 2, 3]]
        assert op.is_symmetric

    def test_sum_kind_symmetric_for_any_weight(self):
        a = make_set([0, 1, 3])
        g = WeightFunction({1: 1.0, 3: 2.0})
        op = build_operator(g, a, kind="sum")
        assert op.is_symmetric
        assert not build_operator(g, a, kind="difference").is_symmetric

    def test_zero_weight_gives_zero_matrix(self):
        a = make_set([0, 1])
        op = build_operator(WeightFunction({}), a, kind="sum")
        assert not op.matrix.any()
        spec = eigen_spectrum(op)
        assert spec.values.tolist() == [0.0, 0.0]

    def test_kind_validated(self):
        a = make_set([0])
        with pytest.raises(ValueError):
            build_operator(WeightFunction({0: 1.0}), a, kind="mixed")

    def test_budget(self):
        a = make_set(range(100))
        with pytest.raises(BudgetError):
            build_operator(WeightFunction({0: 1.0}), a, budget=99)

    def test_empty_rejected(self):
        from sztlab.sets import FiniteRealSet

        with pytest.raises(EmptySetError):
            build_operator(WeightFunction({0: 1.0}), FiniteRealSet())


class TestEigenSpectrum:
    def test_interval_self_correlation_closed_form(self):
        a = make_set([0, 1, 2])
        g = WeightFunction.from_multiplicities(convolve_minus(a, a))
        spec = eigen_spectrum(build_operator(g, a))
        root = math.sqrt(33.0)
        expected = [(7.0 + root) / 2.0, 2.0, (7.0 - root) / 2.0]
        assert np.allclose(spec.values, expected, rtol=1e-9, atol=1e-9)
        assert abs(spec.values.sum() - 9.0) < 1e-9

    def test_rejects_asymmetric(self):
        a = make_set([0, 1, 2])
        op = build_operator(WeightFunction({1: 1.0}), a, kind="difference")
        with pytest.raises(ValueError, match="not symmetric"):
            eigen_spectrum(op)
        assert singular_spectrum(op).values[0] > 0

    @pytest.mark.parametrize("force_fallback", [False, True])
    @pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
    def test_matches_numpy_oracle(self, n, force_fallback):
        rng = _rng(100 + n)
        m = rng.integers(-5, 6, size=(n, n)).astype(float)
        m = m + m.T
        values, vectors, _ = symmetric_eigen(m, force_fallback=force_fallback)
        oracle = np.sort(np.linalg.eigvalsh(m))[::-1]
        scale = max(1.0, float(np.abs(oracle).max()))
        assert np.max(np.abs(values - oracle)) <= 1e-9 * scale
        resid = np.max(np.abs(m @ vectors - vectors * values))
        assert resid <= 1e-9 * max(1.0, float(np.linalg.norm(m)))
        orth = np.max(np.abs(vectors.T @ vectors - np.eye(n)))
        assert orth <= 1e-10

    def test_trace_identity_random(self):
        rng = _rng(7)
        for _ in range(20):
            a = _random_set(rng)
            g = WeightFunction.from_multiplicities(convolve_minus(a, a))
            spec = eigen_spectrum(build_operator(g, a))
            trace = float(np.trace(build_operator(g, a).matrix))
            assert spec.values.sum() == pytest.approx(trace, rel=1e-12)


class TestSingularSpectrum:
    @pytest.mark.parametrize("force_fallback", [False, True])
    @pytest.mark.parametrize("shape", [(1, 1), (3, 5), (6, 4), (12, 12)])
    def test_matches_numpy_oracle(self, shape, force_fallback):
        rng = _rng(sum(shape))
        m = rng.integers(-4, 5, size=shape).astype(float)
        u, s, v, _ = singular_triplets(m, force_fallback=force_fallback)
        oracle = np.linalg.svd(m, compute_uv=False)
        scale = max(1.0, float(oracle.max()))
        assert np.max(np.abs(s - oracle)) <= 1e-9 * scale
        recon = u @ np.diag(s) @ v.T
        assert np.max(np.abs(recon - m)) <= 1e-9 * scale
        k = min(shape)
        assert np.max(np.abs(u.T @ u - np.eye(k))) <= 1e-9
        assert np.max(np.abs(v.T @ v - np.eye(k))) <= 1e-9

    def test_exact_zero_on_identical_column_pair(self):
        # Rotating two bitwise-identical columns cancels one exactly.
        m = np.ones((7, 2))
        _, s, _, _ = singular_triplets(m)
        assert s[0] == pytest.approx(math.sqrt(14.0), rel=1e-12)
        assert s[1] == 0.0

    def test_near_zero_on_three_identical_columns(self):
        # With three identical columns the later rotations act on parallel
        # but not bitwise-identical columns, so the trailing singular
        # values are tiny rather than exactly zero.
        m = np.ones((7, 3))
        _, s, _, _ = singular_triplets(m)
        assert s[0] == pytest.approx(math.sqrt(21.0), rel=1e-12)
        assert s[1] <= 1e-12 * s[0] and s[2] <= 1e-12 * s[0]


class TestRankOne:
    def test_all_ones_split(self):
        a = make_set([0, 1, 4])
        b = make_set([0, 2])
        rep = verify_rank_one_lemma(a, b)
        assert rep.passed
        assert rep.lhs == pytest.approx(math.sqrt(6.0), rel=1e-12)
        assert rep.instance["second_singular_value"] == 0.0

    def test_superset_same_value(self):
        a = make_set([0, 1])
        b = make_set([0, 3])
        s = make_set(list(sumset(a, b)) + [100, 200])
        rep = verify_rank_one_lemma(a, b, s)
        assert rep.passed and rep.lhs == pytest.approx(2.0, rel=1e-12)

    def test_containment_enforced(self):
        a = make_set([0, 1])
        b = make_set([0, 3])
        with pytest.raises(ContainmentError):
            verify_rank_one_lemma(a, b, make_set([0, 1, 3]))


class TestAction:
    def test_shapes_validated(self):
        a = make_set([0, 1, 2])
        op = build_operator(WeightFunction.indicator(sumset(a, a)), a, kind="sum")
        with pytest.raises(ValueError):
            apply_action(op, np.ones(2), np.ones(3))

    @pytest.mark.parametrize("kind", ["difference", "sum"])
    def test_matrix_and_convolution_routes_agree(self, kind):
        rng = _rng(42)
        for _ in range(25):
            a = _random_set(rng, max_size=9)
            b = _random_set(rng, max_size=9)
            if kind == "difference":
                g = WeightFunction.from_multiplicities(convolve_minus(a, a), 0.5)
            else:
                g = WeightFunction.indicator(sumset(a, b))
            op = build_operator(g, a, b, kind=kind)
            vec_a = rng.normal(size=len(b))
            vec_b = rng.normal(size=len(a))
            lhs = apply_action(op, vec_a, vec_b)
            rhs = action_via_convolution(op, vec_a, vec_b)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_gram_identity_matches_tensor(self):
        a = make_set([0, 1, 3])
        b = make_set([0, 2, 5])
        s = sumset(a, b)
        op = build_operator(WeightFunction.indicator(s), a, b, kind="sum")
        gram = op.matrix @ op.matrix.T
        tensor = correlation_tensor([b, s, s])
        for i, x in enumerate(a):
            for j, y in enumerate(a):
                assert gram[i, j] == tensor.entry((x, y))


class TestActionBound:
    def test_worked_interval_case(self):
        a = make_set([0, 1, 2])
        rep = verify_action_g_bound(a, WeightFunction.indicator(sumset(a, a)), "sum")
        assert rep.passed
        assert rep.lhs == pytest.approx(19.0 / 3.0, rel=1e-9)
        assert rep.rhs == pytest.approx(27.0 / 5.0, rel=1e-9)

    def test_point_mass_identity_operator(self):
        a = make_set([0, 1, 2, 5])
        rep = verify_action_g_bound(a, WeightFunction.point_mass(0), "difference")
        assert rep.instance["mu1"] == pytest.approx(1.0, rel=1e-12)
        assert rep.rhs == pytest.approx(1.0, rel=1e-12)
        assert rep.passed

    def test_uneven_difference_weight_rejected(self):
        a = make_set([0, 1, 2])
        with pytest.raises(ValueError):
            verify_action_g_bound(a, WeightFunction({1: 1.0}), "difference")
        with pytest.raises(ValueError):
            verify_action_g_bound(a, WeightFunction({}), "sum")


class TestCsvDumps:
    def test_operator_csv(self):
        a = make_set([0, 1])
        op = build_operator(WeightFunction.indicator(sumset(a, a)), a, kind="sum")
        text = operator_to_csv(op)
        assert text.splitlines()[0] == "sum,0,1"
        assert "1.0" in text

    def test_spectrum_csv(self):
        a = make_set([0, 1])
        spec = eigen_spectrum(
            build_operator(WeightFunction.indicator(sumset(a, a)), a, kind="sum")
        )
        lines = spectrum_to_csv(spec).splitlines()
        assert lines[0] == "index,value"
        assert len(lines) == 3
