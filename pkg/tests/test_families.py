"""Deterministic set generators, the fixed RNG, and convex maps."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sztlab.errors import FamilyError, MapDomainError
from sztlab.families import (
    CONVEX_MAP_IDS,
    FAMILY_KINDS,
    FamilySpec,
    XorShift64Star,
    apply_convex_map,
    generate,
    list_family_kinds,
    list_map_ids,
)
from sztlab.sets import is_convex, make_set


class TestXorShift:
    def test_frozen_stream(self):
        rng = XorShift64Star(1)
        assert [rng.next_word() for _ in range(3)] == [
            5180492295206395165,
            12380297144915551517,
            13389498078930870103,
        ]

    def test_zero_seed_remapped(self):
        zero = XorShift64Star(0)
        golden = XorShift64Star(0x9E3779B97F4A7C15)
        assert [zero.next_word() for _ in range(4)] == [
            golden.next_word() for _ in range(4)
        ]

    def test_below(self):
        rng = XorShift64Star(1)
        vals = [rng.below(10) for _ in range(50)]
        assert all(0 <= v < 10 for v in vals)
        with pytest.raises(ValueError):
            rng.below(0)

    def test_determinism_across_instances(self):
        a = [XorShift64Star(99).next_word() for _ in range(1)]
        b = [XorShift64Star(99).next_word() for _ in range(1)]
        assert a == b


class TestGenerators:
    def test_kind_listing(self):
        assert list_family_kinds() == FAMILY_KINDS
        assert "convex-squares" in FAMILY_KINDS
        assert list_map_ids() == CONVEX_MAP_IDS

    def test_arithmetic(self):
        spec = FamilySpec("arithmetic-progression", 4, params={"start": 3, "step": 2})
        assert list(generate(spec)) == [3, 5, 7, 9]
        with pytest.raises(FamilyError, match="nonzero step"):
            generate(FamilySpec("arithmetic-progression", 3, params={"step": 0}))

    def test_geometric_exact_fractions(self):
        spec = FamilySpec(
            "geometric-progression", 4, params={"start": 1, "ratio": "3/2"}
        )
        assert list(generate(spec)) == [
            1,
            Fraction(3, 2),
            Fraction(9, 4),
            Fraction(27, 8),
        ]
        for bad in (0, 1, -1):
            with pytest.raises(FamilyError):
                generate(FamilySpec("geometric-progression", 3, params={"ratio": bad}))
        with pytest.raises(FamilyError):
            generate(FamilySpec("geometric-progression", 3, params={"start": 0}))

    def test_squares_and_cubes(self):
        assert list(generate(FamilySpec("convex-squares", 4))) == [1, 4, 9, 16]
        assert list(generate(FamilySpec("convex-cubes", 4))) == [1, 8, 27, 64]

    def test_random_gaps_frozen(self):
        got = generate(FamilySpec("convex-random-gaps", 6, seed=7))
        assert list(got) == [0, 7, 21, 38, 62, 88]
        assert is_convex(got)

    def test_random_gaps_param_validation(self):
        with pytest.raises(FamilyError, match="span"):
            generate(FamilySpec("convex-random-gaps", 4, params={"span": 0}))
        with pytest.raises(FamilyError, match="span"):
            generate(
                FamilySpec("convex-random-gaps", 4, params={"span": Fraction(1, 2)})
            )

    def test_convex_image(self):
        spec = FamilySpec("convex-image", 4, params={"map": "cube"})
        assert list(generate(spec)) == [1, 8, 27, 64]
        with pytest.raises(FamilyError, match="base_start"):
            generate(FamilySpec("convex-image", 3, params={"base_start": 0}))

    def test_random_uniform_frozen(self):
        spec = FamilySpec("random-uniform", 5, seed=7, params={"low": 0, "high": 30})
        assert list(generate(spec)) == [3, 11, 19, 22, 27]
        with pytest.raises(FamilyError, match="cannot hold"):
            generate(FamilySpec("random-uniform", 5, params={"low": 0, "high": 3}))

    def test_unknown_kind_and_bad_size(self):
        with pytest.raises(FamilyError, match="unknown family kind"):
            generate(FamilySpec("mystery", 4))
        with pytest.raises(FamilyError, match="at least 1"):
            generate(FamilySpec("convex-squares", 0))

    @given(st.integers(0, 2**64 - 1), st.integers(4, 40))
    @settings(max_examples=40, deadline=None)
    def test_random_gap_sets_are_convex_everywhere(self, seed, n):
        got = generate(FamilySpec("convex-random-gaps", n, seed=seed))
        assert len(got) == n
        assert is_convex(got)

    @given(st.integers(0, 2**64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_same_seed_same_set(self, seed):
        spec = FamilySpec("random-uniform", 12, seed=seed)
        assert list(generate(spec)) == list(generate(spec))


class TestConvexMaps:
    def test_square_and_cube(self):
        a = make_set([1, 2, Fraction(5, 2)])
        assert list(apply_convex_map(a, "square")) == [1, 4, Fraction(25, 4)]
        assert list(apply_convex_map(a, "cube")) == [1, 8, Fraction(125, 8)]

    def test_reciprocal_exact(self):
        a = make_set([1, 2, 3])
        assert list(apply_convex_map(a, "reciprocal")) == [
            Fraction(1, 3),
            Fraction(1, 2),
            1,
        ]

    def test_dyadic_log(self):
        a = make_set([Fraction(1, 8), Fraction(1, 2), 1, 4, 64])
        assert list(apply_convex_map(a, "dyadic-log")) == [-3, -1, 0, 2, 6]

    @pytest.mark.parametrize("map_id", ["square", "cube", "reciprocal"])
    def test_positive_domain_enforced(self, map_id):
        with pytest.raises(MapDomainError):
            apply_convex_map(make_set([-1, 2]), map_id)
        with pytest.raises(MapDomainError):
            apply_convex_map(make_set([0, 2]), map_id)

    def test_dyadic_log_domain(self):
        with pytest.raises(MapDomainError, match="power of two"):
            apply_convex_map(make_set([3]), "dyadic-log")
        with pytest.raises(MapDomainError, match="power of two"):
            apply_convex_map(make_set([Fraction(3, 4)]), "dyadic-log")
        with pytest.raises(MapDomainError):
            apply_convex_map(make_set([-2]), "dyadic-log")

    def test_unknown_map(self):
        with pytest.raises(FamilyError, match="unknown map"):
            apply_convex_map(make_set([1]), "exp")
