import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pascal_spiral import (
    PascalParams,
    PowerSeries,
    RTauParams,
    adaptive_truncation_order,
    evaluate,
    evaluate_d1,
    evaluate_d2,
    extremal_rtau_series,
    hadamard_convolve,
    identity_series,
    integral_transform,
    pascal_coefficient,
    pascal_coefficients,
    pascal_pmf,
    rtau_coefficient_bound,
    theta_series,
)


class TestPascalParams:
    def test_rejects_m_below_one(self):
        with pytest.raises(ValueError):
            PascalParams(0.5, 0.3)

    def test_rejects_q_one(self):
        with pytest.raises(ValueError):
            PascalParams(2.0, 1.0)

    def test_rejects_negative_q(self):
        with pytest.raises(ValueError):
            PascalParams(2.0, -0.1)

    def test_q_zero_allowed(self):
        PascalParams(1.0, 0.0)


class TestPmf:
    def test_k0_reduces_to_failure_mass(self):
        assert pascal_pmf(0, PascalParams(2, 0.5)) == 0.25

    def test_hand_value_k1(self):
        assert pascal_pmf(1, PascalParams(1, 0.5)) == pytest.approx(0.25, abs=0)

    def test_normalization(self):
        p = PascalParams(3, 0.4)
        total = sum(pascal_pmf(k, p) for k in range(201))
        assert abs(total - 1.0) < 1e-12

    def test_rejects_negative_k(self):
        with pytest.raises(ValueError):
            pascal_pmf(-1, PascalParams(1, 0.5))

    @given(
        k=st.integers(min_value=0, max_value=60),
        m=st.floats(min_value=1.0, max_value=20.0),
        q=st.floats(min_value=0.0, max_value=0.95),
    )
    @settings(max_examples=60, deadline=None)
    def test_is_probability(self, k, m, q):
        v = pascal_pmf(k, PascalParams(m, q))
        assert 0.0 <= v <= 1.0


class TestCoefficients:
    def test_hand_values(self):
        assert pascal_coefficient(2, PascalParams(1, 0.5)) == 0.25
        assert pascal_coefficient(3, PascalParams(2, 0.5)) == 0.1875

    def test_zero_for_q_zero(self):
        p = PascalParams(4, 0.0)
        assert all(pascal_coefficient(n, p) == 0.0 for n in range(2, 8))

    def test_index_shift_identity_exact(self):
        for m in (1.0, 1.5, 3.0):
            p = PascalParams(m, 0.37)
            for n in range(2, 40):
                assert pascal_coefficient(n, p) == pascal_pmf(n - 1, p)

    def test_vectorised_matches_scalar_bitwise(self):
        p = PascalParams(2.5, 0.6)
        arr = pascal_coefficients(p, 50)
        for n in range(2, 51):
            assert arr[n - 2] == pascal_coefficient(n, p)


class TestThetaSeries:
    def test_q_zero_is_identity(self):
        f = theta_series(PascalParams(3, 0.0), 10)
        assert np.all(f.coeffs == 0)

    def test_hand_values(self):
        f = theta_series(PascalParams(1, 0.5), 3)
        assert f.coefficient(2) == 0.25
        assert f.coefficient(3) == 0.125

    def test_coefficient_ratio_tends_to_q(self):
        p = PascalParams(2, 0.3)
        f = theta_series(p, 500)
        ratio = abs(f.coefficient(500) / f.coefficient(499))
        assert abs(ratio - p.q) < 1e-3

    def test_default_order_is_adaptive(self):
        p = PascalParams(2, 0.4)
        assert theta_series(p).order == adaptive_truncation_order(p)


class TestPowerSeries:
    def test_first_coefficient_fixed(self):
        f = PowerSeries([0.5, 0.25])
        assert f.coefficient(1) == 1.0
        assert f.order == 3

    def test_coeffs_read_only(self):
        f = PowerSeries([0.5])
        with pytest.raises(ValueError):
            f.coeffs[0] = 2.0

    def test_index_out_of_range(self):
        f = PowerSeries([0.5])
        with pytest.raises(IndexError):
            f.coefficient(3)


class TestHadamard:
    def test_identity_annihilates(self):
        f = PowerSeries([2.0, 3.0])
        assert hadamard_convolve(f, identity_series()).order == 1

    def test_unit_coefficients_preserve_theta(self):
        theta = theta_series(PascalParams(2, 0.3), 8)
        ones = PowerSeries(np.ones(7))
        assert np.all(hadamard_convolve(ones, theta).coeffs == theta.coeffs)

    def test_hand_values(self):
        out = hadamard_convolve(PowerSeries([2.0, 3.0]), PowerSeries([0.25, 0.125]))
        assert np.allclose(out.coeffs, [0.5, 0.375])

    @given(
        a=st.lists(st.floats(-2, 2), min_size=0, max_size=6),
        b=st.lists(st.floats(-2, 2), min_size=0, max_size=6),
    )
    @settings(max_examples=50, deadline=None)
    def test_commutative(self, a, b):
        f, g = PowerSeries(a), PowerSeries(b)
        assert hadamard_convolve(f, g) == hadamard_convolve(g, f)

    @given(
        a=st.lists(st.floats(-2, 2), min_size=4, max_size=4),
        b=st.lists(st.floats(-2, 2), min_size=4, max_size=4),
        c=st.lists(st.floats(-2, 2), min_size=4, max_size=4),
    )
    @settings(max_examples=50, deadline=None)
    def test_associative_on_equal_orders(self, a, b, c):
        f, g, h = PowerSeries(a), PowerSeries(b), PowerSeries(c)
        left = hadamard_convolve(hadamard_convolve(f, g), h)
        right = hadamard_convolve(f, hadamard_convolve(g, h))
        assert np.allclose(left.coeffs, right.coeffs, rtol=1e-12, atol=1e-15)


class TestIntegralTransform:
    def test_identity_unchanged(self):
        assert integral_transform(identity_series()).order == 1

    def test_divides_by_index(self):
        out = integral_transform(PowerSeries([0.25]))
        assert out.coefficient(2) == 0.125

    def test_theta_hand_values(self):
        out = integral_transform(theta_series(PascalParams(1, 0.5), 3))
        assert out.coefficient(2) == 0.125
        assert abs(out.coefficient(3) - 0.125 / 3) < 1e-16

    def test_round_trip_recovers_coefficients(self):
        f = theta_series(PascalParams(2.5, 0.6), 60)
        g = integral_transform(f)
        n = np.arange(2.0, f.order + 1.0)
        recovered = g.coeffs * n
        assert np.allclose(recovered.real, f.coeffs.real, rtol=1e-15, atol=0)


class TestEvaluate:
    def test_identity_series(self):
        z = 0.3 + 0.4j
        assert evaluate(identity_series(), z) == z
        assert evaluate_d1(identity_series(), z) == 1.0
        assert evaluate_d2(identity_series(), z) == 0.0

    def test_exact_at_origin(self):
        f = PowerSeries([0.7, -0.2j])
        assert evaluate(f, 0.0) == 0.0
        assert evaluate_d1(f, 0.0) == 1.0

    def test_hand_value(self):
        f = PowerSeries([0.25])
        assert evaluate(f, 0.5) == 0.5625

    def test_rejects_boundary(self):
        f = PowerSeries([0.25])
        with pytest.raises(ValueError):
            evaluate(f, 1.0)
        with pytest.raises(ValueError):
            evaluate_d1(f, 1.0 + 0.1j)

    def test_vectorised_matches_scalar(self):
        f = theta_series(PascalParams(2, 0.4), 30)
        zs = np.array([0.1, 0.2 + 0.3j, -0.5j])
        vec = evaluate(f, zs)
        for z, v in zip(zs, vec):
            assert v == evaluate(f, complex(z))

    def test_derivative_matches_finite_difference(self):
        rng = np.random.default_rng(7)
        f = theta_series(PascalParams(2, 0.4), 40)
        h = 1e-6
        for _ in range(50):
            z = complex(*(rng.uniform(-0.6, 0.6, size=2)))
            fd = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h)
            assert abs(fd - evaluate_d1(f, z)) < 1e-6


class TestRTau:
    def test_param_validation(self):
        with pytest.raises(ValueError):
            RTauParams(tau=0.0)
        with pytest.raises(ValueError):
            RTauParams(vartheta=0.0)
        with pytest.raises(ValueError):
            RTauParams(delta=1.0)

    def test_bound_hand_value(self):
        assert rtau_coefficient_bound(2, RTauParams(1.0, 1.0, 0.0)) == 1.0

    def test_bound_decays(self):
        r = RTauParams(1.0, 1.0, 0.0)
        assert rtau_coefficient_bound(1000, r) < 0.01

    def test_bound_vanishes_as_delta_to_one(self):
        r = RTauParams(1.0, 1.0, 1.0 - 1e-9)
        assert rtau_coefficient_bound(2, r) < 1e-8

    def test_extremal_series_hand_values(self):
        f = extremal_rtau_series(RTauParams(1.0, 1.0, 0.0), 3)
        assert f.coefficient(2) == 1.0
        assert abs(f.coefficient(3) - 2.0 / 3.0) < 1e-16

    def test_extremal_series_monotone(self):
        f = extremal_rtau_series(RTauParams(0.8, 0.4, 0.1), 30)
        mags = np.abs(f.coeffs)
        assert np.all(np.diff(mags) < 0)


class TestAdaptiveTruncation:
    def test_deterministic(self):
        p = PascalParams(3, 0.7)
        assert adaptive_truncation_order(p) == adaptive_truncation_order(p)

    def test_tail_actually_small(self):
        p = PascalParams(2, 0.6)
        n = adaptive_truncation_order(p)
        tail = sum(pascal_coefficient(k, p) for k in range(n + 1, n + 2000))
        assert tail < 1e-13

    def test_q_zero_minimal(self):
        assert adaptive_truncation_order(PascalParams(5, 0.0)) == 2
