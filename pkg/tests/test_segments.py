import math

import pytest

from nikolskii import (
    AdmissibilityError,
    LemmaReport,
    Segment,
    check_segment_lemma,
    check_segment_lower_bound,
    check_trig_segment_bound,
    length_ratios,
    sweep_segments,
)

HALF_PI = math.pi / 2


class TestSegment:
    def test_length(self):
        assert Segment(0.25, 0.75).length == 0.5

    def test_rejects_reversed(self):
        with pytest.raises(ValueError):
            Segment(0.5, 0.4)


class TestSegmentLemma:
    def test_symmetric_example(self):
        r = check_segment_lemma(1, 1, Segment(0.25, 0.75))
        assert r.lhs == pytest.approx(1 / 12, rel=1e-12)
        assert r.rhs == pytest.approx(0.1145833333333333, rel=1e-12)
        assert r.passed and r.margin > 0

    def test_boundary_length_example(self):
        # l = 2/3 is exactly the admissible ratio for (2, 1)
        r = check_segment_lemma(2, 1, Segment(1 / 3, 1.0))
        assert r.lhs == pytest.approx(4 / 81, rel=1e-12)
        assert r.rhs == pytest.approx(2 / 27, rel=1e-12)
        assert r.passed

    def test_reference_segment_is_equality(self):
        r = check_segment_lemma(1.5, 0.5, Segment(0.0, 0.5))
        assert r.margin == 0.0 and r.passed

    def test_mirrored_equality(self):
        l = 0.4
        r = check_segment_lemma(0.5, 1.5, Segment(1.0 - l, 1.0), mirrored=True)
        assert abs(r.margin) <= 1e-11
        assert r.passed

    def test_mirrored_statement_id(self):
        r = check_segment_lemma(0, 1, Segment(0.1, 0.3), mirrored=True)
        assert r.statement == "mirror-corollary"

    def test_rejects_wrong_exponent_order(self):
        with pytest.raises(AdmissibilityError):
            check_segment_lemma(1, 2, Segment(0.0, 0.2))
        with pytest.raises(AdmissibilityError):
            check_segment_lemma(2, 1, Segment(0.0, 0.2), mirrored=True)

    def test_rejects_overlong_segment(self):
        # l ratio for (1, 1) is 1/2
        with pytest.raises(AdmissibilityError):
            check_segment_lemma(1, 1, Segment(0.2, 0.75))

    def test_rejects_segment_outside_domain(self):
        with pytest.raises(AdmissibilityError):
            check_segment_lemma(1, 0, Segment(0.5, 1.2))

    def test_zero_exponents_zero_length_only(self):
        r = check_segment_lemma(0, 0, Segment(0.3, 0.3))
        assert r.margin == 0.0 and r.passed
        with pytest.raises(AdmissibilityError):
            check_segment_lemma(0, 0, Segment(0.3, 0.4))


class TestLowerBound:
    def test_symmetric_example(self):
        r = check_segment_lower_bound(1, 1, Segment(0.25, 0.75))
        assert r.lhs == pytest.approx(0.0625, rel=1e-12)
        assert r.rhs == pytest.approx(0.1145833333333333, rel=1e-12)
        assert r.passed

    def test_equality_when_mu_zero_anchored(self):
        l = 0.4
        r = check_segment_lower_bound(2, 0, Segment(0.0, l))
        assert r.lhs == pytest.approx(l**3 / 3, rel=1e-13)
        assert abs(r.margin) <= 1e-11

    def test_asymmetric_example(self):
        r = check_segment_lower_bound(1, 3, Segment(0.25, 0.75))
        assert r.lhs == pytest.approx(0.0078125, rel=1e-12)
        assert r.rhs == pytest.approx(79 / 2560, rel=1e-12)
        assert r.passed

    def test_rejects_unit_length(self):
        with pytest.raises(AdmissibilityError):
            check_segment_lower_bound(1, 0, Segment(0.0, 1.0))

    def test_rejects_overlong(self):
        # l_max for (1, 1) is 1/2
        with pytest.raises(AdmissibilityError):
            check_segment_lower_bound(1, 1, Segment(0.0, 0.51))


class TestTrigBound:
    def test_sine_example(self):
        r = check_trig_segment_bound(1, 0, Segment(0.0, math.pi / 4))
        assert r.lhs == pytest.approx(math.pi / 16, rel=1e-12)
        assert r.rhs == pytest.approx(1 - math.sqrt(2) / 2, rel=1e-10)
        assert r.passed

    def test_convention_case_identity(self):
        r = check_trig_segment_bound(0, 0, Segment(0.2, 1.3))
        assert r.note == "convention-case"
        assert abs(r.margin) <= 1e-11
        assert r.passed

    def test_symmetric_example(self):
        r = check_trig_segment_bound(1, 1, Segment(math.pi / 8, 3 * math.pi / 8))
        assert r.lhs == pytest.approx(math.pi / 32, rel=1e-12)
        assert r.rhs == pytest.approx(math.sqrt(2) / 4, rel=1e-10)
        assert r.passed

    def test_rejects_overlong(self):
        # (pi/2) l_max for (1, 1) is pi/4
        with pytest.raises(AdmissibilityError):
            check_trig_segment_bound(1, 1, Segment(0.0, 0.8 * HALF_PI))

    def test_rejects_outside_domain(self):
        with pytest.raises(AdmissibilityError):
            check_trig_segment_bound(1, 0, Segment(1.0, 2.0))


class TestSweep:
    def test_small_grid_all_pass(self):
        result = sweep_segments("segment-lemma", [(1.0, 1.0)], 4)
        assert len(result.reports) == 4
        assert result.skipped == 0
        assert all(r.passed for r in result.reports)

    def test_empty_grid(self):
        result = sweep_segments("segment-lemma", [], 10)
        assert result.reports == ()
        assert result.skipped == 0

    def test_degenerate_zero_exponents(self):
        result = sweep_segments("segment-lemma", [(0.0, 0.0)], 9)
        assert all(r.segment.length == 0.0 for r in result.reports)
        assert all(r.margin == 0.0 and r.passed for r in result.reports)

    def test_inadmissible_combo_counted(self):
        # alpha < mu is outright inadmissible for the plain lemma
        result = sweep_segments("segment-lemma", [(0.0, 1.0)], 9)
        assert len(result.reports) == 0
        assert result.skipped == 9

    def test_boundary_length_included(self):
        result = sweep_segments("segment-lemma", [(2.0, 1.0)], 121)
        lmax = length_ratios(2.0, 1.0).l
        assert any(r.segment.length == lmax for r in result.reports)

    def test_trig_strict_cap_skips(self):
        # l_max = 1 for (1, 0): the boundary length pi/2 violates l < pi/2
        result = sweep_segments("trig-segment-lemma", [(1.0, 0.0)], 121)
        assert result.skipped == 11
        assert len(result.reports) == 110

    def test_deterministic_ordering(self):
        combos = [(2.0, 1.0), (1.0, 1.0)]
        result = sweep_segments("lower-bound-corollary", combos, 9)
        keys = [(r.alpha, r.mu, r.segment.a, r.segment.length) for r in result.reports]
        assert keys == sorted(keys)
        again = sweep_segments("lower-bound-corollary", combos, 9)
        assert result == again

    def test_unknown_statement(self):
        with pytest.raises(ValueError):
            sweep_segments("not-a-statement", [(1.0, 1.0)], 4)

    def test_unimodality_of_mass_in_position(self):
        # for fixed length the segment mass rises then falls as the segment
        # slides right, matching the single interior maximum of the weight
        result = sweep_segments("segment-lemma", [(2.0, 1.0)], 400)
        by_length: dict[float, list[LemmaReport]] = {}
        for r in result.reports:
            by_length.setdefault(r.segment.length, []).append(r)
        for length, rows in by_length.items():
            if length == 0.0:
                continue
            rows.sort(key=lambda r: r.segment.a)
            values = [r.rhs for r in rows]
            tol = 1e-12 * max(values)
            falling = False
            for prev, cur in zip(values, values[1:]):
                if cur < prev - tol:
                    falling = True
                else:
                    assert not falling or cur <= prev + tol, (
                        f"mass not unimodal at length {length}"
                    )
