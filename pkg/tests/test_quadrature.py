import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import roots_jacobi

from nikolskii import (
    Accuracy,
    QuadratureConvergenceError,
    TrigWeightParams,
    WeightParams,
    compose_with_cosine,
    gauss_jacobi_rule,
    integrate_weighted_algebraic,
    integrate_weighted_trig,
    oracle_integrate,
    random_poly,
)
from nikolskii.quadrature import weight_mass

mp.mp.dps = 30

ONES = lambda x: np.ones_like(x)


def mp_moment(a_exp, b_exp, k):
    """Reference moment int_-1^1 s^k (1-s)^a (1+s)^b ds via mpmath."""
    val = mp.quad(
        lambda s: s**k * (1 - s) ** mp.mpf(a_exp) * (1 + s) ** mp.mpf(b_exp), [-1, 0, 1]
    )
    return float(val)


class TestGaussJacobiRule:
    def test_two_point_legendre(self):
        rule = gauss_jacobi_rule(0, 0, 2)
        assert rule.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], abs=1e-15)
        assert rule.weights == pytest.approx([1.0, 1.0], abs=1e-14)

    def test_chebyshev_weights_equal(self):
        for m in range(1, 9):
            rule = gauss_jacobi_rule(-0.5, -0.5, m)
            assert rule.weights == pytest.approx([math.pi / m] * m, rel=1e-12)

    def test_three_point_on_square(self):
        assert gauss_jacobi_rule(0, 0, 3).apply(lambda s: s**2) == pytest.approx(
            2 / 3, rel=1e-14
        )

    @pytest.mark.parametrize("a_exp,b_exp", [(0, 0), (-0.5, -0.5), (1.0, 2.0), (0.5, 0.0)])
    @pytest.mark.parametrize("m", [1, 2, 4, 8])
    def test_exactness_on_monomials(self, a_exp, b_exp, m):
        rule = gauss_jacobi_rule(a_exp, b_exp, m)
        for k in range(2 * m):
            value = rule.apply(lambda s: s**k)
            ref = mp_moment(a_exp, b_exp, k)
            assert value == pytest.approx(ref, rel=1e-10, abs=1e-12)

    def test_against_scipy(self):
        # sanity cross-check; scipy's own weights are only good to ~1e-10
        # relative on near-endpoint nodes, so the tolerance is loose
        for a_exp, b_exp, m in ((0.75, 2.5, 40), (-0.25, 0.0, 17), (3.0, -0.5, 64)):
            rule = gauss_jacobi_rule(a_exp, b_exp, m)
            nodes, weights = roots_jacobi(m, a_exp, b_exp)
            assert rule.nodes == pytest.approx(nodes, abs=1e-13)
            assert rule.weights == pytest.approx(weights, rel=1e-9)

    def test_structural_invariants(self):
        for a_exp, b_exp, m in ((0.5, 2.5, 33), (-0.9, -0.9, 100), (4.0, 0.0, 7)):
            rule = gauss_jacobi_rule(a_exp, b_exp, m)
            assert np.all(rule.weights > 0)
            assert np.all(np.diff(rule.nodes) > 0)
            assert rule.nodes[0] > -1 and rule.nodes[-1] < 1
            assert len(rule.nodes) == len(rule.weights) == m
            mass = weight_mass(a_exp, b_exp)
            assert float(np.sum(rule.weights)) == pytest.approx(mass, rel=1e-12)

    def test_cache_returns_identical_rule(self):
        first = gauss_jacobi_rule(0.25, 0.75, 12)
        second = gauss_jacobi_rule(0.25, 0.75, 12)
        assert first is second

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            gauss_jacobi_rule(-1.0, 0, 4)
        with pytest.raises(ValueError):
            gauss_jacobi_rule(0, 0, 0)


class TestWeightedIntegrals:
    def test_plain_length(self):
        assert integrate_weighted_algebraic(ONES, WeightParams(0, 0, 0)) == pytest.approx(
            2.0, rel=1e-12
        )

    def test_parabolic_weight(self):
        assert integrate_weighted_algebraic(ONES, WeightParams(1, 1, 0)) == pytest.approx(
            4 / 3, rel=1e-12
        )

    def test_odd_weight_even_integrand(self):
        assert integrate_weighted_algebraic(
            lambda x: x**2, WeightParams(0, 0, 1)
        ) == pytest.approx(0.5, rel=1e-12)

    def test_trig_mass(self):
        assert integrate_weighted_trig(ONES, TrigWeightParams(0, 0)) == pytest.approx(
            2 * math.pi, rel=1e-12
        )

    def test_abs_sin_mass(self):
        assert integrate_weighted_trig(ONES, TrigWeightParams(1, 0)) == pytest.approx(
            4.0, rel=1e-12
        )

    def test_abs_cos_mass(self):
        assert integrate_weighted_trig(ONES, TrigWeightParams(0, 1)) == pytest.approx(
            4.0, rel=1e-12
        )

    def test_full_output_carries_error_estimate(self):
        result = integrate_weighted_algebraic(ONES, WeightParams(0.5, 1.5, 0.5), full_output=True)
        assert result.error <= max(1e-10 * abs(result.value), 1e-13)
        assert result.points >= 32

    def test_linearity(self):
        w = WeightParams(0.5, 2.0, 1.0)
        base = integrate_weighted_algebraic(lambda x: np.cos(x), w)
        for c in (3.0, -2.5, 1e-7, 1e6):
            scaled = integrate_weighted_algebraic(lambda x: c * np.cos(x), w)
            assert scaled == pytest.approx(c * base, rel=1e-12)

    def test_reflection_symmetric_weights(self):
        f = lambda x: np.exp(x) + x**3
        g = lambda x: np.exp(-x) - x**3
        w = WeightParams(1.5, 1.5, 0.5)
        assert integrate_weighted_algebraic(f, w) == pytest.approx(
            integrate_weighted_algebraic(g, w), rel=1e-10
        )
        tw = TrigWeightParams(1.5, 0.5)
        ft = lambda t: np.sin(t) ** 2 + np.cos(3 * t)
        gt = lambda t: np.sin(-t) ** 2 + np.cos(-3 * t)
        assert integrate_weighted_trig(ft, tw) == pytest.approx(
            integrate_weighted_trig(gt, tw), rel=1e-10
        )

    def test_nonconvergence_reports_last_iterates(self):
        acc = Accuracy(rel_tol=1e-15, abs_tol=1e-300, max_points=64)
        kink = lambda x: np.abs(x - 0.1234567) ** 0.31
        with pytest.raises(QuadratureConvergenceError) as excinfo:
            integrate_weighted_algebraic(kink, WeightParams(0, 0, 0), acc)
        err = excinfo.value
        assert math.isfinite(err.previous) and math.isfinite(err.latest)
        assert err.previous != err.latest
        assert "64" in str(err)

    def test_trig_segment_against_mpmath(self):
        cases = [
            (0.5, 2.5, 0.3, 1.1),
            (1.0, 0.0, 0.0, math.pi / 4),
            (2.0, 1.0, 0.7, math.pi / 2),
            (0.0, 0.0, 0.0, math.pi / 2),
            (3.0, 0.5, 0.0, math.pi / 2),
        ]
        for alpha, mu, a, b in cases:
            mine = integrate_weighted_trig(ONES, TrigWeightParams(alpha, mu), segment=(a, b))
            ref = float(
                mp.quad(
                    lambda t: mp.sin(t) ** mp.mpf(alpha) * mp.cos(t) ** mp.mpf(mu),
                    [a, b],
                )
            )
            assert mine == pytest.approx(ref, rel=1e-10)

    def test_segment_rejects_outside_quarter_period(self):
        with pytest.raises(ValueError):
            integrate_weighted_trig(ONES, TrigWeightParams(1, 1), segment=(-0.5, 1.0))
        with pytest.raises(ValueError):
            integrate_weighted_trig(ONES, TrigWeightParams(1, 1), segment=(0.5, 2.0))

    def test_zero_length_segment(self):
        assert integrate_weighted_trig(ONES, TrigWeightParams(1, 1), segment=(0.4, 0.4)) == 0.0

    def test_negative_exponent_weights_against_mpmath(self):
        w = WeightParams(-0.5, -0.5, 0.0)
        mine = integrate_weighted_algebraic(ONES, w)
        assert mine == pytest.approx(math.pi, rel=1e-12)
        w = WeightParams(-0.5, 0.25, -0.25)
        mine = integrate_weighted_algebraic(lambda x: np.cos(x), w)
        ref = float(
            mp.quad(
                lambda x: mp.cos(x)
                * (1 - x) ** mp.mpf(-0.5)
                * (1 + x) ** mp.mpf(0.25)
                * abs(x) ** mp.mpf(-0.25),
                [-1, 0, 1],
            )
        )
        assert mine == pytest.approx(ref, rel=1e-10)


class TestOracle:
    def test_plain_mass(self):
        v = oracle_integrate(ONES, WeightParams(0, 0, 0), 10_000)
        assert v == pytest.approx(2.0, abs=1e-8)

    def test_parabolic_mass(self):
        v = oracle_integrate(ONES, WeightParams(1, 1, 0), 100_000)
        assert v == pytest.approx(4 / 3, abs=1e-7)

    def test_trig_mass(self):
        v = oracle_integrate(ONES, TrigWeightParams(1, 0), 100_000)
        assert v == pytest.approx(4.0, abs=1e-6)

    def test_rejects_few_panels(self):
        with pytest.raises(ValueError):
            oracle_integrate(ONES, WeightParams(0, 0, 0), 999)

    def test_oracle_vs_gauss_on_singular_weight(self):
        # graded midpoint reaches ~1e-7 relative on square-root endpoint
        # singularities; the Gauss value is the accurate one
        w = WeightParams(-0.5, -0.5, 0.0)
        assert oracle_integrate(ONES, w, 200_000) == pytest.approx(math.pi, rel=1e-6)


class TestCosineCompositionIdentity:
    def test_trig_equals_twice_algebraic(self):
        # int |P(cos t)|^p |sin|^(2a+1) |cos|^mu dt = 2 int |P|^p (1-x)^a (1+x)^a |x|^mu dx
        for seed, alpha, mu, p in ((1, 0.0, 0.0, 2.0), (2, 0.5, 1.0, 2.0), (3, 1.0, 2.5, 4.0)):
            P = random_poly(8, seed, "algebraic")
            T = compose_with_cosine(P)
            lhs = integrate_weighted_trig(
                lambda t: np.abs(T(t)) ** p, TrigWeightParams(2 * alpha + 1, mu)
            )
            rhs = 2.0 * integrate_weighted_algebraic(
                lambda x: np.abs(P(x)) ** p, WeightParams(alpha, alpha, mu)
            )
            assert lhs == pytest.approx(rhs, rel=1e-9)
