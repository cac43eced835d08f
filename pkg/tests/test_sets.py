"""Exact set arithmetic, convolutions and the set-file format."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sztlab.errors import EmptySetError
from sztlab.sets import (
    FiniteRealSet,
    MultiplicityMap,
    as_rational,
    convolve_minus,
    convolve_plus,
    difference_set,
    is_convex,
    level_set,
    load_set_file,
    make_set,
    parse_set_text,
    product_set,
    rational_str,
    save_set_file,
    sumset,
)

rationals = st.one_of(
    st.integers(min_value=-60, max_value=60),
    st.fractions(min_value=-10, max_value=10, max_denominator=8),
)
small_sets = st.builds(make_set, st.lists(rationals, min_size=1, max_size=10))


class TestRationals:
    def test_canonical_int(self):
        assert as_rational(Fraction(4, 2)) == 2
        assert isinstance(as_rational(Fraction(4, 2)), int)
        assert as_rational("3/6") == Fraction(1, 2)
        assert as_rational("-7") == -7

    def test_rejects_floats_and_bools(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            as_rational(True)

    def test_render(self):
        assert rational_str(Fraction(1, 2)) == "1/2"
        assert rational_str(Fraction(6, 3)) == "2"
        assert rational_str(-3) == "-3"


class TestMakeSet:
    def test_dedup_and_sort(self):
        a = make_set([2, 0, 1, 1])
        assert a.elements == (0, 1, 2)
        assert len(a) == 3
        assert 1 in a and 5 not in a

    def test_mixed_representations_collapse(self):
        a = make_set([1, Fraction(2, 2), "1", Fraction(1, 2)])
        assert a.elements == (Fraction(1, 2), 1)

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            make_set([])

    def test_min_max_translate_dilate(self):
        a = make_set([3, 1, 7])
        assert a.min() == 1 and a.max() == 7
        assert a.translate(-1).elements == (0, 2, 6)
        assert a.dilate(Fraction(1, 2)).elements == (Fraction(1, 2), Fraction(3, 2), Fraction(7, 2))
        assert a.dilate(-1).elements == (-7, -3, -1)
        with pytest.raises(ValueError):
            a.dilate(0)

    def test_equality_and_hash(self):
        assert make_set([1, 2]) == make_set([2, 1])
        assert hash(make_set([1, 2])) == hash(make_set([2, 1]))


class TestArithmetic:
    def test_sumset_difference_product(self):
        gp = make_set([1, 2, 4, 8])
        assert len(sumset(gp, gp)) == 10
        assert len(difference_set(gp, gp)) == 13
        assert len(product_set(gp, gp)) == 7
        assert sumset(make_set([0, 1]), make_set([10])).elements == (10, 11)

    def test_convolve_plus_counts(self):
        a = make_set([0, 1, 2])
        assert dict(convolve_plus(a, a).items()) == {0: 1, 1: 2, 2: 3, 3: 2, 4: 1}

    def test_convolve_minus_counts(self):
        a = make_set([0, 1, 2])
        assert dict(convolve_minus(a, a).items()) == {-2: 1, -1: 2, 0: 3, 1: 2, 2: 1}

    def test_convolve_minus_orientation(self):
        a = make_set([0])
        b = make_set([3])
        assert convolve_minus(a, b)[3] == 1
        assert convolve_minus(b, a)[-3] == 1


class TestMultiplicityMap:
    def test_lookup_and_mass(self):
        m = convolve_plus(make_set([0, 1]), make_set([0, 1]))
        assert m[1] == 2 and m[99] == 0
        assert m.total_mass() == 4
        assert m.max_multiplicity() == 2
        assert m.support().elements == (0, 1, 2)

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            MultiplicityMap({0: -1})
        with pytest.raises(ValueError):
            MultiplicityMap({0: 1.5})


class TestConvexity:
    def test_squares_convex(self):
        assert is_convex(make_set([1, 4, 9, 16]))

    def test_progression_not_convex(self):
        assert not is_convex(make_set([1, 2, 3, 4]))

    def test_needs_three_elements(self):
        with pytest.raises(ValueError):
            is_convex(make_set([1, 2]))


class TestLevelSet:
    def test_threshold_filtering(self):
        conv = convolve_plus(make_set([0, 1, 2]), make_set([0, 1, 2]))
        assert level_set(conv, 2).elements == (1, 2, 3)
        assert level_set(conv, 3).elements == (2,)
        assert level_set(conv, Fraction(5, 2)).elements == (2,)

    def test_empty_result_allowed(self):
        conv = convolve_plus(make_set([0, 1]), make_set([0, 1]))
        empty = level_set(conv, 2.5)
        assert len(empty) == 0

    def test_positive_threshold_required(self):
        conv = convolve_plus(make_set([0]), make_set([0]))
        with pytest.raises(ValueError):
            level_set(conv, 0)


class TestSetFiles:
    def test_parse_with_comments_and_fractions(self):
        text = "# header\n 3 \n1/2\n3  # dup below\n3\n-4\n"
        a = parse_set_text(text)
        assert a.elements == (-4, Fraction(1, 2), 3)

    def test_parse_error_reports_line(self):
        with pytest.raises(ValueError, match="line 2"):
            parse_set_text("1\nnot-a-number\n")
        with pytest.raises(ValueError, match="line 1"):
            parse_set_text("1/0\n")

    def test_roundtrip(self, tmp_path):
        a = make_set([Fraction(-1, 3), 0, 7])
        path = tmp_path / "a.txt"
        save_set_file(path, a)
        assert load_set_file(path) == a
        assert path.read_text() == "-1/3\n0\n7\n"


class TestInvariants:
    @given(small_sets, small_sets)
    @settings(max_examples=60, deadline=None)
    def test_convolution_support_and_mass(self, a, b):
        conv = convolve_plus(a, b)
        assert conv.support() == sumset(a, b)
        assert conv.total_mass() == len(a) * len(b)
        corr = convolve_minus(a, b)
        assert corr.support() == difference_set(b, a)
        assert corr.total_mass() == len(a) * len(b)

    @given(small_sets)
    @settings(max_examples=60, deadline=None)
    def test_self_correlation_symmetry(self, a):
        corr = convolve_minus(a, a)
        assert corr[0] == len(a)
        for x, count in corr.items():
            assert corr[-x] == count

    @given(small_sets, small_sets)
    @settings(max_examples=60, deadline=None)
    def test_sumset_commutes_and_grows(self, a, b):
        s = sumset(a, b)
        assert s == sumset(b, a)
        assert len(s) >= len(a) + len(b) - 1

    @given(small_sets, st.integers(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_affine_invariance_of_multiplicities(self, a, t):
        image = a.translate(t).dilate(3)
        before = sorted(c for _, c in convolve_plus(a, a).items())
        after = sorted(c for _, c in convolve_plus(image, image).items())
        assert before == after
