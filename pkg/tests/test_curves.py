"""Curve types, conversions and validation."""

import math
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvekit.curves import (
    NON_DECREASING_DISCOUNT,
    NON_POSITIVE_DISCOUNT,
    NON_POSITIVE_FORWARD,
    DiscountCurve,
    SwapCurve,
    ZeroCurve,
    discounts_from_zeros,
    forward_rates,
    par_rates,
    validate,
    zero_price,
    zero_yield_from_price,
    zeros_from_discounts,
)
from curvekit.sampling import random_discount_curve


def flat_discounts(rate: float, n: int) -> DiscountCurve:
    return DiscountCurve(tuple((1.0 + rate) ** (-k) for k in range(1, n + 1)))


class TestZeroPrice:
    def test_zero_rate_is_unit_price(self):
        assert zero_price(0.0, 7) == 1.0

    def test_hand_values(self):
        assert zero_price(0.05, 1) == pytest.approx(1.0 / 1.05, abs=1e-15)
        assert zero_price(0.05, 3) == pytest.approx(1.0 / 1.05**3, abs=1e-15)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            zero_price(-1.0, 2)
        with pytest.raises(ValueError):
            zero_price(0.05, 0)

    def test_unit_price_zero_yield(self):
        assert zero_yield_from_price(1.0, 5) == 0.0

    def test_inverse_hand_values(self):
        assert zero_yield_from_price(1.0 / 1.05, 1) == pytest.approx(0.05, abs=1e-12)
        assert zero_yield_from_price(1.0 / 1.05**3, 3) == pytest.approx(0.05, abs=1e-12)

    def test_inverse_domain_errors(self):
        with pytest.raises(ValueError):
            zero_yield_from_price(0.0, 3)
        with pytest.raises(ValueError):
            zero_yield_from_price(-0.2, 3)

    @given(
        y=st.floats(min_value=-0.2, max_value=0.5, exclude_min=True),
        t=st.integers(min_value=1, max_value=60),
    )
    @settings(max_examples=300)
    def test_round_trip(self, y, t):
        assert zero_yield_from_price(zero_price(y, t), t) == pytest.approx(
            y, abs=1e-12
        )


class TestCurveTypes:
    def test_zero_curve_rejects_unsorted_tenors(self):
        with pytest.raises(ValueError):
            ZeroCurve((2.0, 1.0), (0.01, 0.02))

    def test_zero_curve_rejects_nonpositive_tenor(self):
        with pytest.raises(ValueError):
            ZeroCurve((0.0, 1.0), (0.01, 0.02))

    def test_zero_curve_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            ZeroCurve((1.0, 2.0), (0.01,))

    def test_rate_range_enforced(self):
        with pytest.raises(ValueError):
            SwapCurve((0.05, 1.5))
        with pytest.raises(ValueError):
            ZeroCurve((1.0,), (-0.6,))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            SwapCurve(())
        with pytest.raises(ValueError):
            DiscountCurve(())

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            DiscountCurve((0.9, float("nan")))

    def test_annuities_are_exact_prefix_sums(self):
        curve = DiscountCurve((0.95, 0.9, 0.85))
        acc = 0.0
        for p, a in zip(curve.factors, curve.annuities):
            acc += p
            assert a == acc  # bit-exact, same summation order

    def test_curves_are_immutable(self):
        curve = flat_discounts(0.05, 3)
        with pytest.raises(AttributeError):
            curve.factors = (1.0,)


class TestForwardRates:
    def test_flat_curve_forwards_equal_rate(self):
        fwd = forward_rates(flat_discounts(0.04, 12))
        for f in fwd.forwards:
            assert f == pytest.approx(0.04, abs=1e-12)

    def test_hand_value(self):
        curve = DiscountCurve((1.0 / 1.02, 1.0 / 1.03**2))
        fwd = forward_rates(curve)
        assert fwd.forwards[0] == pytest.approx(0.02, abs=1e-12)
        assert fwd.forwards[1] == pytest.approx(1.03**2 / 1.02 - 1.0, abs=1e-12)

    def test_decreasing_positive_curve_gives_positive_forwards(self):
        rng = Random(7)
        for _ in range(50):
            curve = random_discount_curve(rng, rng.randint(1, 40))
            assert all(f > 0.0 for f in forward_rates(curve).forwards)

    def test_zero_price_is_domain_error(self):
        with pytest.raises(ValueError):
            forward_rates(DiscountCurve((0.9, 0.0)))

    def test_length_matches_input(self):
        assert len(forward_rates(flat_discounts(0.03, 9))) == 9

    @given(st.integers(min_value=1, max_value=60), st.integers(min_value=0))
    @settings(max_examples=80)
    def test_telescoping_product(self, n, seed):
        curve = random_discount_curve(Random(seed), n)
        fwd = forward_rates(curve).forwards
        for year in range(1, n + 1):
            product = math.prod(1.0 + f for f in fwd[:year])
            assert product == pytest.approx(1.0 / curve.factors[year - 1], abs=1e-10)


class TestParRates:
    def test_flat_zero_curve_par_equals_rate(self):
        for y in (0.001, 0.02, 0.05, 0.11):
            rates = par_rates(flat_discounts(y, 30))
            for s in rates.rates:
                assert s == pytest.approx(y, abs=1e-12)

    def test_hand_values(self):
        curve = DiscountCurve((1.0 / 1.05, 1.0 / 1.05**2))
        s2 = par_rates(curve).rates[1]
        assert s2 == pytest.approx(0.05, abs=1e-10)
        one_year = par_rates(DiscountCurve((0.99,))).rates[0]
        assert one_year == pytest.approx(0.01 / 0.99, abs=1e-12)

    def test_requires_positive_factors(self):
        with pytest.raises(ValueError):
            par_rates(DiscountCurve((0.9, -0.1)))


class TestValidate:
    def test_flat_curve_is_clean(self):
        report = validate(flat_discounts(0.05, 10))
        assert report.ok
        assert report.violations == ()

    def test_rising_factor_flagged_at_second_year(self):
        report = validate(DiscountCurve((0.95, 0.96)))
        assert not report.ok
        kinds = {(v.index, v.kind) for v in report.violations}
        assert (2, NON_DECREASING_DISCOUNT) in kinds

    def test_negative_factor_flagged(self):
        report = validate(DiscountCurve((0.95, -0.1)))
        kinds = {(v.index, v.kind) for v in report.violations}
        assert (2, NON_POSITIVE_DISCOUNT) in kinds

    def test_first_factor_checked_against_par(self):
        report = validate(DiscountCurve((1.0, 0.9)))
        kinds = {(v.index, v.kind) for v in report.violations}
        assert (1, NON_DECREASING_DISCOUNT) in kinds

    def test_forward_violation_carries_interval_start(self):
        report = validate(DiscountCurve((0.95, 0.96)))
        kinds = {(v.index, v.kind) for v in report.violations}
        assert (1, NON_POSITIVE_FORWARD) in kinds

    def test_never_raises_on_zero_factor(self):
        report = validate(DiscountCurve((0.9, 0.0)))
        assert not report.ok

    def test_report_flag_must_mirror_violations(self):
        from curvekit.curves import ValidationReport, Violation

        with pytest.raises(ValueError):
            ValidationReport(ok=True, violations=(Violation(1, "x", 0.0),))
        with pytest.raises(ValueError):
            ValidationReport(ok=False, violations=())

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0))
    @settings(max_examples=100)
    def test_ok_iff_positive_forwards_and_decreasing(self, n, seed):
        rng = Random(seed)
        curve = random_discount_curve(rng, n)
        if rng.random() < 0.5 and n >= 2:
            # Break the curve at a random interior point.
            factors = list(curve.factors)
            pos = rng.randrange(1, n)
            factors[pos] = factors[pos - 1] * rng.uniform(1.0, 1.2)
            curve = DiscountCurve(tuple(factors))
        decreasing = all(
            b < a for a, b in zip((1.0,) + curve.factors, curve.factors)
        )
        positive_forwards = decreasing and all(
            f > 0.0 for f in forward_rates(curve).forwards
        )
        assert validate(curve).ok == (decreasing and positive_forwards)


class TestZeroDiscountConversions:
    def test_round_trip_on_integer_grid(self):
        rng = Random(11)
        curve = random_discount_curve(rng, 25)
        zeros = zeros_from_discounts(curve)
        back = discounts_from_zeros(zeros)
        for a, b in zip(curve.factors, back.factors):
            assert a == pytest.approx(b, abs=1e-12)

    def test_requires_integer_grid(self):
        with pytest.raises(ValueError):
            discounts_from_zeros(ZeroCurve((0.5, 1.5), (0.02, 0.03)))
