import math

import numpy as np
import pytest

from nikolskii import (
    AlgebraicPoly,
    NikolskiiParams,
    TrigPoly,
    TrigWeightParams,
    WeightParams,
    derive_seed,
    extremal_ratio_search,
    lp_norm,
    nikolskii_constant,
    random_poly,
    run_bari_suite,
    run_nikolskii_suite,
    sharpness_fit,
    sharpness_series,
    suite_accuracy,
    verify_bari,
    verify_constant_properties,
    verify_nikolskii,
)

PI = math.pi


class TestVerifyBari:
    def test_cosine_p2(self):
        record = verify_bari(TrigPoly(0.0, (1.0,), (0.0,)), TrigWeightParams(0, 0), 2, 1)
        assert record.lhs == pytest.approx(1.0, rel=1e-12)
        assert record.rhs == pytest.approx(2**1.5 * math.sqrt(PI), rel=1e-10)
        assert record.passed

    def test_constant_p1(self):
        record = verify_bari(TrigPoly(1.0, (), ()), TrigWeightParams(0, 0), 1, 1)
        assert record.lhs == pytest.approx(1.0)
        assert record.rhs == pytest.approx(8 * PI, rel=1e-10)
        assert record.passed

    def test_zero_polynomial(self):
        record = verify_bari(TrigPoly(0.0, (0.0,), (0.0,)), TrigWeightParams(1, 1), 2, 1)
        assert record.lhs == record.rhs == 0.0
        assert record.ratio == 0.0
        assert record.passed

    def test_unweighted_case_flagged(self):
        record = verify_bari(TrigPoly(0.0, (1.0,), (0.0,)), TrigWeightParams(0, 0), 1)
        assert "lmax-convention" in record.note

    def test_degree_defaulting_and_validation(self):
        T = TrigPoly(0.0, (1.0, 0.5), (0.0, 0.0))
        assert verify_bari(T, TrigWeightParams(1, 0), 2).n == 2
        with pytest.raises(ValueError):
            verify_bari(T, TrigWeightParams(1, 0), 2, n=1)
        with pytest.raises(ValueError):
            verify_bari(T, TrigWeightParams(1, 0), math.inf)

    def test_exact_degree_recorded(self):
        T = TrigPoly(0.0, (1.0, 0.0), (0.0, 0.0))
        record = verify_bari(T, TrigWeightParams(0.5, 0.5), 2, 5)
        assert record.exact_degree == 1 and record.n == 5


class TestVerifyNikolskii:
    def test_identity_polynomial_q_infinity(self):
        record = verify_nikolskii(
            AlgebraicPoly((0.0, 1.0)), NikolskiiParams(0, 0, 0, 1, math.inf, 1)
        )
        assert record.lhs == pytest.approx(1.0, rel=1e-12)
        assert record.rhs == pytest.approx(16 * PI, rel=1e-10)
        assert record.passed

    @pytest.mark.parametrize("n", [1, 4, 64])
    def test_chebyshev_basis_chebyshev_weight(self, n):
        coeffs = [0.0] * n + [1.0]
        params = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, n)
        record = verify_nikolskii(AlgebraicPoly(tuple(coeffs)), params)
        assert record.lhs == pytest.approx(1.0, rel=1e-12)
        # B(-1/2,-1/2,0,2,n) = 32, so the bound is sqrt(32 n) sqrt(pi/2)
        assert record.rhs == pytest.approx(4 * math.sqrt(PI * n), rel=1e-10)
        assert record.passed

    def test_constant_ratio_scale_free(self):
        params = NikolskiiParams(1, 0, 1, 1, 3, 2)
        r1 = verify_nikolskii(AlgebraicPoly((2.0, 0.0, 0.0)), params)
        r2 = verify_nikolskii(AlgebraicPoly((-700.0, 0.0, 0.0)), params)
        assert r1.ratio == pytest.approx(r2.ratio, rel=1e-10)
        assert r1.passed and r2.passed

    def test_rejects_degree_overflow(self):
        with pytest.raises(ValueError):
            verify_nikolskii(
                AlgebraicPoly((0.0, 0.0, 1.0)), NikolskiiParams(0, 0, 0, 1, 2, 1)
            )


class TestSuites:
    def test_bari_suite_deterministic_and_passing(self):
        first = run_bari_suite(trials=60, master_seed=5)
        second = run_bari_suite(trials=60, master_seed=5)
        assert first == second
        assert all(r.passed for r in first)
        keys = [(r.n, r.alpha, r.mu, r.p, r.seed) for r in first]
        assert keys == sorted(keys)

    def test_bari_suite_seed_changes_records(self):
        a = run_bari_suite(trials=10, master_seed=1)
        b = run_bari_suite(trials=10, master_seed=2)
        assert a != b

    def test_nikolskii_suite_covers_q_infinity(self):
        records = run_nikolskii_suite(trials=60, master_seed=5)
        assert all(r.passed for r in records)
        assert any(math.isinf(r.q) for r in records)

    def test_derive_seed_spreads(self):
        seeds = {derive_seed(0, i) for i in range(1000)}
        assert len(seeds) == 1000

    def test_suite_accuracy_tiers(self):
        assert suite_accuracy(2.0).rel_tol == 1e-10
        assert suite_accuracy(4.0).rel_tol == 1e-10
        assert suite_accuracy(3.0).rel_tol == 1e-7
        assert suite_accuracy(1.0).rel_tol == 3e-5
        assert suite_accuracy(math.inf).rel_tol == 1e-10


class TestConstantProperties:
    def test_default_grid_passes(self):
        report = verify_constant_properties()
        assert report.passed
        assert report.failures == ()
        checks = {r.check for r in report.records}
        assert checks == {
            "c-monotone", "c-limit", "c-uniform-bound", "c-uniform-bound-mu0",
            "b-monotone", "b-limit", "b-uniform-bound", "b-c-identity",
            "c-equality-edge", "b-equality-edge",
        }

    def test_equality_edges_exact(self):
        report = verify_constant_properties(alphas=[0.0], betas=[0.0], mus=[0.0], ps=[1.0], ns=[1])
        edges = {r.check: r for r in report.records if "equality" in r.check}
        assert edges["c-equality-edge"].lhs == pytest.approx(8 * PI, rel=1e-13)
        assert edges["b-equality-edge"].lhs == pytest.approx(
            16 * PI**2 / (PI - 1), rel=1e-13
        )


class TestExtremalSearch:
    def test_dominates_structured_starts_and_matches_theory(self):
        n = 4
        params = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, n)
        poly, ratio = extremal_ratio_search(n, params, restarts=2, budget=1500, master_seed=3)
        w = WeightParams(-0.5, -0.5, 0)
        for coeffs in ((0, 0, 0, 0, 1.0), (1.0,) * 5):
            start = AlgebraicPoly(coeffs)
            start_ratio = lp_norm(start, math.inf, w) / lp_norm(start, 2, w)
            assert ratio >= start_ratio - 1e-12
        # exact extremal value for this weight is sqrt((2n+1)/pi)
        assert ratio == pytest.approx(math.sqrt((2 * n + 1) / PI), rel=1e-3)
        assert poly.degree_bound == n

    def test_never_exceeds_theorem_bound(self):
        n = 4
        params = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, n)
        _, ratio = extremal_ratio_search(n, params, restarts=2, budget=1500, master_seed=3)
        gap = params.metric_gap
        bound = (
            nikolskii_constant(-0.5, -0.5, 0, 2, n) ** gap
            * n ** (params.degree_exponent * gap)
        )
        assert ratio <= bound * (1 + 1e-8)

    def test_scale_invariance_of_objective(self):
        w = WeightParams(-0.5, -0.5, 0)
        P = random_poly(6, 17, "algebraic")
        r1 = lp_norm(P, math.inf, w) / lp_norm(P, 2, w)
        P2 = P.scaled(2.0)
        r2 = lp_norm(P2, math.inf, w) / lp_norm(P2, 2, w)
        assert r1 == pytest.approx(r2, rel=1e-12)

    def test_growth_between_degrees(self):
        params1 = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, 1)
        params4 = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, 4)
        _, r1 = extremal_ratio_search(1, params1, restarts=1, budget=800, master_seed=0)
        _, r4 = extremal_ratio_search(4, params4, restarts=1, budget=800, master_seed=0)
        assert 1.6 <= r4 / r1 <= 2.4

    def test_parameter_degree_mismatch(self):
        with pytest.raises(ValueError):
            extremal_ratio_search(3, NikolskiiParams(0, 0, 0, 1, 2, 5))


class TestSharpnessFit:
    def test_exact_power_law(self):
        params = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, 32)
        degrees = [2, 4, 8, 16, 32]
        fit = sharpness_fit(degrees, [3.0 * n**0.5 for n in degrees], params)
        assert fit.fitted_exponent == pytest.approx(0.5, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_constant_ratios(self):
        params = NikolskiiParams(0, 0, 0, 1, 2, 8)
        fit = sharpness_fit([2, 4, 8], [5.0, 5.0, 5.0], params)
        assert fit.fitted_exponent == pytest.approx(0.0, abs=1e-12)

    def test_theory_exponent_unweighted(self):
        params = NikolskiiParams(0, 0, 0, 1, math.inf, 8)
        fit = sharpness_fit([2, 4, 8], [1.0, 2.0, 4.0], params)
        assert fit.theory_exponent == pytest.approx(2.0)

    def test_rejects_bad_series(self):
        params = NikolskiiParams(0, 0, 0, 1, 2, 8)
        with pytest.raises(ValueError):
            sharpness_fit([2, 4], [1.0, 2.0], params)
        with pytest.raises(ValueError):
            sharpness_fit([2, 4, 3], [1.0, 2.0, 3.0], params)
        with pytest.raises(ValueError):
            sharpness_fit([2, 4, 8], [1.0, -2.0, 3.0], params)

    def test_series_runner(self):
        params = NikolskiiParams(-0.5, -0.5, 0, 2, math.inf, 4)
        fit = sharpness_series(params, [1, 2, 4], restarts=1, budget=500, master_seed=1)
        assert len(fit.degrees) == 3
        assert all(r > 0 for r in fit.best_ratios)
        assert fit.theory_exponent == pytest.approx(0.5)
