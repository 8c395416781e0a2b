import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanbounds import (
    PositivePair,
    arithmetic_mean,
    gap,
    geometric_mean,
    harmonic_mean,
    identric_mean,
    log_identric_over_arithmetic,
    pair_from_gap,
    q_mean,
)

from oracles import identric_raw, lr_gap

EPS = np.finfo(float).eps

# Frozen with mpmath at 40 digits.
FOUR_OVER_E = 1.471517764685769286382
EIGHT_OVER_E = 2.943035529371538572764
LN_8_OVER_3E = -0.01917074698827376314355
LN_2_OVER_E = -0.3068528194400546905828
IDENTRIC_3_7 = 4.861677506708433644954
IDENTRIC_002_5 = 1.880640582680203241138

positive_entries = st.floats(min_value=-6.0, max_value=6.0).map(lambda e: 10.0 ** e)


def pairs(min_gap=0.0):
    def build(scale, v):
        return PositivePair(scale * (1.0 + v), scale * (1.0 - v))
    return st.builds(
        build,
        st.floats(min_value=-6.0, max_value=6.0).map(lambda e: 10.0 ** e),
        st.floats(min_value=min_gap, max_value=1.0 - 1e-9),
    )


class TestConstruction:
    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 2.0), (1.0, 0.0),
                                     (math.inf, 1.0), (math.nan, 1.0)])
    def test_rejects_nonpositive(self, a, b):
        with pytest.raises(ValueError):
            PositivePair(a, b)

    def test_equal_entries_allowed(self):
        assert PositivePair(3.0, 3.0).a == 3.0


class TestClassicalMeans:
    def test_arithmetic_exact_cases(self):
        assert arithmetic_mean(PositivePair(1, 3)) == 2.0
        assert arithmetic_mean(PositivePair(2, 4)) == 3.0
        assert arithmetic_mean(PositivePair(7.5, 7.5)) == 7.5

    def test_geometric_exact_cases(self):
        assert geometric_mean(PositivePair(4, 9)) == 6.0
        assert geometric_mean(PositivePair(1, 2)) == math.sqrt(2)
        assert geometric_mean(PositivePair(5, 5)) == 5.0

    def test_harmonic_exact_cases(self):
        assert harmonic_mean(PositivePair(1, 1)) == 1.0
        assert harmonic_mean(PositivePair(1, 3)) == 1.5
        assert harmonic_mean(PositivePair(2, 6)) == 3.0


class TestIdentric:
    def test_closed_form_1_2(self):
        got = identric_mean(PositivePair(1, 2))
        assert got == pytest.approx(FOUR_OVER_E, rel=1e-13)

    def test_closed_form_2_4(self):
        assert identric_mean(PositivePair(2, 4)) == pytest.approx(
            EIGHT_OVER_E, rel=1e-13)

    def test_equal_arguments_continuous_extension(self):
        assert identric_mean(PositivePair(0.37, 0.37)) == 0.37

    @pytest.mark.parametrize("a,b,expected", [
        (3.0, 7.0, IDENTRIC_3_7),
        (0.02, 5.0, IDENTRIC_002_5),
    ])
    def test_against_frozen_high_precision(self, a, b, expected):
        assert identric_mean(PositivePair(a, b)) == pytest.approx(expected, rel=1e-13)

    @given(pairs(min_gap=1e-6))
    @settings(max_examples=150)
    def test_against_raw_power_formula(self, pair):
        # The raw definition evaluated in mpmath is the independent route.
        expected = float(identric_raw(pair.a, pair.b))
        assert identric_mean(pair) == pytest.approx(expected, rel=1e-12)


class TestQMean:
    def test_t_half_is_arithmetic(self):
        pair = PositivePair(1, 2)
        assert q_mean(pair, 0.5, 3.0) == pytest.approx(1.5, rel=1e-15)

    def test_t_zero_s_one_is_geometric(self):
        assert q_mean(PositivePair(4, 9), 0.0, 1.0) == pytest.approx(6.0, rel=1e-14)

    def test_s_two_is_harmonic_of_mixed_pair(self):
        got = q_mean(PositivePair(1, 3), 0.2, 2.0)
        c, d = 0.2 * 1 + 0.8 * 3, 0.2 * 3 + 0.8 * 1
        assert got == pytest.approx(2 * c * d / (c + d), rel=1e-13)
        assert got == pytest.approx(1.82, rel=1e-13)

    @pytest.mark.parametrize("t,s", [(-0.1, 2.0), (0.6, 2.0), (0.2, 0.5)])
    def test_domain_rejection(self, t, s):
        with pytest.raises(ValueError):
            q_mean(PositivePair(1, 2), t, s)

    @given(pairs(min_gap=1e-3), st.floats(min_value=1.0, max_value=50.0))
    @settings(max_examples=100)
    def test_strictly_increasing_in_t(self, pair, s):
        ts = np.linspace(0.0, 0.5, 21)
        values = [q_mean(pair, t, s) for t in ts]
        assert all(b > a for a, b in zip(values, values[1:]))

    @given(pairs(), st.floats(min_value=0.0, max_value=0.5),
           st.floats(min_value=1.0, max_value=50.0))
    @settings(max_examples=150)
    def test_bounded_by_g_like_and_arithmetic(self, pair, t, s):
        q = q_mean(pair, t, s)
        a = arithmetic_mean(pair)
        q0 = q_mean(pair, 0.0, s)
        assert q0 <= q * (1 + 4 * EPS)
        assert q <= a * (1 + 4 * EPS)


class TestGap:
    def test_direct_values(self):
        assert gap(PositivePair(1, 3)) == 0.5
        assert gap(PositivePair(5, 5)) == 0.0
        assert gap(PositivePair(1, 2)) == pytest.approx(1 / 3, abs=1e-16)

    @given(pairs())
    @settings(max_examples=150)
    def test_round_trip_up_to_scale_and_order(self, pair):
        v = gap(pair)
        rebuilt = pair_from_gap(v, scale=arithmetic_mean(pair))
        assert sorted((rebuilt.a, rebuilt.b)) == pytest.approx(
            sorted((pair.a, pair.b)), rel=1e-12)

    def test_pair_from_gap_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            pair_from_gap(1.0)


class TestLogIdentricOverArithmetic:
    def test_zero_gap(self):
        assert log_identric_over_arithmetic(0.0) == 0.0

    def test_matches_identric_at_one_third(self):
        # gap(1, 2) = 1/3 and ln(I/A) = ln(8/(3e)) there
        got = log_identric_over_arithmetic(1 / 3)
        assert got == pytest.approx(LN_8_OVER_3E, rel=1e-13)

    def test_limit_toward_one(self):
        got = log_identric_over_arithmetic(1 - 1e-9)
        assert got == pytest.approx(LN_2_OVER_E, abs=1e-6)

    def test_strictly_negative_inside(self):
        vs = np.geomspace(1e-8, 1 - 1e-9, 200)
        vals = log_identric_over_arithmetic(vs)
        assert np.all(vals < 0)

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_rejects_out_of_domain(self, bad):
        with pytest.raises(ValueError):
            log_identric_over_arithmetic(bad)

    def test_series_and_direct_agree_in_overlap(self):
        # Around the crossover both float paths are valid; they agree to
        # absolute machine precision (the direct path's relative accuracy
        # degrades as v -> 0, which is why the series takes over).
        vs = np.geomspace(1e-4, 1e-2, 50)
        series = log_identric_over_arithmetic(vs, method="series")
        direct = log_identric_over_arithmetic(vs, method="direct")
        assert np.max(np.abs(series - direct)) < 2e-15

    @pytest.mark.parametrize("v", [1e-8, 1e-6, 1e-4, 1e-3, 0.25, 0.5, 0.9,
                                   0.99, 1 - 1e-6])
    def test_against_oracle(self, v):
        assert log_identric_over_arithmetic(v) == pytest.approx(
            float(lr_gap(v)), abs=4e-15)


class TestStructuralInvariants:
    @given(pairs())
    @settings(max_examples=200)
    def test_symmetry_exact(self, pair):
        swapped = PositivePair(pair.b, pair.a)
        assert arithmetic_mean(pair) == arithmetic_mean(swapped)
        assert geometric_mean(pair) == geometric_mean(swapped)
        assert harmonic_mean(pair) == harmonic_mean(swapped)
        assert identric_mean(pair) == identric_mean(swapped)
        assert q_mean(pair, 0.3, 2.0) == q_mean(swapped, 0.3, 2.0)

    @given(pairs(), st.floats(min_value=-6.0, max_value=6.0).map(lambda e: 10.0 ** e))
    @settings(max_examples=200)
    def test_homogeneity(self, pair, lam):
        scaled = PositivePair(lam * pair.a, lam * pair.b)
        for mean in (arithmetic_mean, geometric_mean, harmonic_mean):
            assert mean(scaled) == pytest.approx(lam * mean(pair), rel=4 * EPS)
        # The identric mean goes through the gap coordinate, whose
        # conditioning near v = 1 amplifies the scaling roundoff by a
        # factor ~ln(1/(1-v)); 1e-13 covers the full tested range.
        assert identric_mean(scaled) == pytest.approx(
            lam * identric_mean(pair), rel=1e-13)

    @given(pairs(min_gap=1e-6))
    @settings(max_examples=200)
    def test_ordering_chain_strict(self, pair):
        h, g = harmonic_mean(pair), geometric_mean(pair)
        i, a = identric_mean(pair), arithmetic_mean(pair)
        assert h < g < i < a

    @given(pairs())
    @settings(max_examples=200)
    def test_ordering_chain_weak(self, pair):
        h, g = harmonic_mean(pair), geometric_mean(pair)
        i, a = identric_mean(pair), arithmetic_mean(pair)
        assert h <= g * (1 + 4 * EPS)
        assert g <= i * (1 + 4 * EPS)
        assert i <= a * (1 + 4 * EPS)

    @given(st.floats(min_value=1e-8, max_value=1 - 1e-8))
    @settings(max_examples=200)
    def test_identric_consistent_with_log_ratio(self, v):
        pair = pair_from_gap(v, scale=3.0)
        reconstructed = math.exp(log_identric_over_arithmetic(gap(pair))) \
            * arithmetic_mean(pair)
        assert reconstructed == pytest.approx(identric_mean(pair), rel=1e-12)
