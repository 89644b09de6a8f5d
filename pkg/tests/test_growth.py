from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergoseq.errors import RangeError
from ergoseq.growth import (GrowthClass, GrowthSequence, SignedCode,
                            circle_norm_square_sums, classify_growth,
                            decode_value, encode_value,
                            enumerate_positive_codes, make_affine_sequence,
                            nearest_integer_distance, threshold_index)

from oracles import all_code_values


Q134 = GrowthSequence((1, 3, 9))
Q4 = GrowthSequence((1, 4, 13, 40))
POW3 = GrowthSequence(tuple(3 ** k for k in range(6)))


class TestAffineSequence:
    def test_constant_three_is_super(self):
        aff = make_affine_sequence(3, 1, 5)
        assert aff.sequence.terms == (1, 4, 13, 40, 121)
        assert aff.sequence.growth_class is GrowthClass.SUPER_GROWTH

    def test_constant_one_is_not_growth(self):
        aff = make_affine_sequence(1, 1, 4)
        assert aff.sequence.terms == (1, 2, 3, 4)
        assert aff.sequence.growth_class is GrowthClass.NONE

    def test_constant_two_is_growth_not_super(self):
        aff = make_affine_sequence(2, 1, 4)
        assert aff.sequence.terms == (1, 3, 7, 15)
        assert aff.sequence.growth_class is GrowthClass.GROWTH

    def test_inverse_square_partials(self):
        aff = make_affine_sequence(3, 1, 5)
        assert aff.inverse_square_sums == tuple(Fraction(k, 9)
                                                for k in range(1, 5))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            make_affine_sequence(0, 1, 3)
        with pytest.raises(ValueError):
            make_affine_sequence(3, 0, 3)
        with pytest.raises(ValueError):
            make_affine_sequence([3], 1, 3)  # one multiplier short


class TestClassify:
    def test_examples(self):
        assert classify_growth((1, 3, 9, 27)) is GrowthClass.SUPER_GROWTH
        assert classify_growth((1, 2, 4, 8)) is GrowthClass.GROWTH
        assert classify_growth((5,)) is GrowthClass.SUPER_GROWTH

    def test_non_increasing_rejected(self):
        with pytest.raises(ValueError):
            classify_growth((1, 1, 2))
        with pytest.raises(ValueError):
            classify_growth((3, 2))
        with pytest.raises(ValueError):
            classify_growth(())


class TestDecode:
    def test_single_digit(self):
        assert decode_value(SignedCode.from_digits({2: 1}), Q134) == 3

    def test_mixed_signs(self):
        code = SignedCode.from_digits({1: -1, 2: -1, 3: 1})
        assert decode_value(code, Q134) == 5

    def test_empty_code(self):
        assert decode_value(SignedCode(()), Q134) == 0

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            decode_value(SignedCode.from_digits({4: 1}), Q134)


class TestEncode:
    def test_backtracking_example(self):
        code = encode_value(5, Q134)
        assert code.entries == ((1, -1), (2, -1), (3, 1))

    def test_gap_returns_none(self):
        assert encode_value(2, Q4) is None

    def test_zero_is_empty(self):
        assert encode_value(0, Q4) == SignedCode(())

    def test_out_of_range_returns_none(self):
        assert encode_value(Q4.total + 1, Q4) is None
        assert encode_value(-Q4.total - 1, Q4) is None

    def test_requires_super_growth(self):
        with pytest.raises(ValueError):
            encode_value(3, GrowthSequence((1, 2, 4, 8)))

    def test_exhaustive_against_brute_force(self):
        table = all_code_values(Q4.terms)
        for n in range(-Q4.total, Q4.total + 1):
            code = encode_value(n, Q4)
            if n in table:
                assert code is not None, f"missed representable {n}"
                expected = {i + 1: d for i, d in enumerate(table[n][0]) if d}
                assert code == SignedCode.from_digits(expected)
                assert decode_value(code, Q4) == n
            else:
                assert code is None, f"phantom code for {n}"

    def test_injectivity_exhaustive_depth8(self):
        terms = tuple(3 ** k for k in range(8))
        table = all_code_values(terms)
        collisions = {v: c for v, c in table.items() if len(c) > 1}
        assert not collisions

    def test_sign_law(self):
        for v, codes in all_code_values(Q4.terms).items():
            digits = codes[0]
            if not any(digits):
                continue
            top = next(d for d in reversed(digits) if d)
            assert (v > 0) == (top == 1)


@st.composite
def super_growth_sequences(draw):
    k = draw(st.integers(min_value=1, max_value=7))
    terms = [draw(st.integers(min_value=1, max_value=4))]
    for _ in range(k - 1):
        bump = draw(st.integers(min_value=1, max_value=5))
        terms.append(2 * sum(terms) + bump)
    return GrowthSequence(tuple(terms))


class TestEncodeProperties:
    @given(super_growth_sequences(), st.integers(-1000, 1000))
    @settings(max_examples=300)
    def test_roundtrip(self, q, n):
        code = encode_value(n, q)
        if code is not None:
            assert decode_value(code, q) == n
            if n > 0:
                assert code.is_positive_form
            if n != 0:
                assert code.digit(code.kappa_max) == (1 if n > 0 else -1)

    @given(super_growth_sequences())
    @settings(max_examples=50)
    def test_every_brute_value_found(self, q):
        table = all_code_values(q.terms)
        for v in table:
            assert encode_value(v, q) is not None


class TestEnumerate:
    def test_small_bound(self):
        q = GrowthSequence((1, 4, 13))
        got = list(enumerate_positive_codes(q, 4))
        assert [v for v, _ in got] == [1, 3, 4]
        assert got[0][1] == SignedCode.from_digits({1: 1})
        assert got[1][1] == SignedCode.from_digits({1: -1, 2: 1})
        assert got[2][1] == SignedCode.from_digits({2: 1})

    def test_zero_bound_empty(self):
        q = GrowthSequence((1, 4, 13))
        assert list(enumerate_positive_codes(q, 0)) == []

    def test_skip_first_index_filter(self):
        q = GrowthSequence((1, 4, 13))
        got = list(enumerate_positive_codes(q, 5, skip_first_index=True))
        assert [v for v, _ in got] == [4]

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_count_formula(self, k):
        q = GrowthSequence(tuple(3 ** j for j in range(k)))
        count = sum(1 for _ in enumerate_positive_codes(q, q.total))
        assert count == (3 ** k - 1) // 2

    def test_increasing_and_unique(self):
        values = [v for v, _ in enumerate_positive_codes(Q4, Q4.total)]
        assert values == sorted(set(values))


class TestThresholdIndex:
    def test_powers_of_three(self):
        assert threshold_index(10, POW3) == 4

    def test_first_index(self):
        assert threshold_index(1, Q4) == 1

    def test_boundary_is_inclusive(self):
        assert threshold_index(40, Q4) == 4

    def test_above_range(self):
        with pytest.raises(RangeError):
            threshold_index(59, Q4)

    def test_bracketing_and_monotone(self):
        prev = 0
        for n in range(1, Q4.terms[-1] + 1):
            c = threshold_index(n, Q4)
            assert c >= prev
            below = Q4.term(c - 1) if c > 1 else 0
            assert below < n <= Q4.term(c)
            prev = c


class TestCircleNorm:
    def test_distance(self):
        assert nearest_integer_distance(Fraction(7, 3)) == Fraction(1, 3)
        assert nearest_integer_distance(Fraction(-1, 4)) == Fraction(1, 4)
        assert nearest_integer_distance(Fraction(5)) == 0

    def test_third_against_powers_of_three(self):
        sums = circle_norm_square_sums(POW3, Fraction(1, 3))
        assert all(s == Fraction(1, 9) for s in sums)

    def test_zero_point(self):
        assert circle_norm_square_sums(Q4, Fraction(0)) == [0, 0, 0, 0]

    def test_half_point(self):
        sums = circle_norm_square_sums(Q4, Fraction(1, 2))
        assert sums == [Fraction(1, 4), Fraction(1, 4),
                        Fraction(1, 2), Fraction(1, 2)]

    def test_count_too_large(self):
        with pytest.raises(RangeError):
            circle_norm_square_sums(Q4, Fraction(1, 2), count=5)


class TestSerialization:
    def test_growth_json_roundtrip(self):
        text = Q4.to_json()
        assert GrowthSequence.from_json(text) == Q4
        assert '"1"' in text  # decimal strings, arbitrary-precision safe

    def test_code_json_roundtrip(self):
        code = SignedCode.from_digits({1: -1, 3: 1})
        assert SignedCode.from_json(code.to_json()) == code

    def test_code_rejects_bad_digits(self):
        with pytest.raises(ValueError):
            SignedCode(((1, 2),))
        with pytest.raises(ValueError):
            SignedCode(((2, 1), (1, 1)))
