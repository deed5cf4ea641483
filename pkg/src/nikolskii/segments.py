"""Numerical verification of the segment integral inequalities.

Four statements are checked over exhaustive segment grids:

* ``segment-lemma``      -- for alpha >= mu >= 0 and a segment of length
  l <= alpha/(alpha+mu) inside [0, 1], the weight mass over [0, l] is a
  lower bound for the mass over the segment.
* ``mirror-corollary``   -- the reflected statement for mu >= alpha >= 0,
  with [1-l, 1] as the reference segment.
* ``lower-bound-corollary`` -- an explicit closed-form lower bound for the
  mass over any admissible segment (l <= l_max, l < 1).
* ``trig-segment-lemma`` -- the analogous bound for |sin t|^a |cos t|^m
  over segments of [0, pi/2] with l <= (pi/2) l_max, l < pi/2.

Admissibility is enforced, not assumed: inadmissible inputs raise
``AdmissibilityError`` (a rejected input, which is distinct from an
inequality failure), and sweeps count them as skips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .constants import length_ratios
from .quadrature import Accuracy, integrate_weighted_trig
from .weights import TrigWeightParams, segment_weight_integral

SEGMENT_LEMMA = "segment-lemma"
MIRROR_COROLLARY = "mirror-corollary"
LOWER_BOUND_COROLLARY = "lower-bound-corollary"
TRIG_SEGMENT_LEMMA = "trig-segment-lemma"

ALL_STATEMENTS = (
    SEGMENT_LEMMA,
    MIRROR_COROLLARY,
    LOWER_BOUND_COROLLARY,
    TRIG_SEGMENT_LEMMA,
)

# relative slack when testing the sharp admissibility thresholds, so that
# float-exact boundary lengths are admitted
_THRESHOLD_FUZZ = 1e-12

DEFAULT_LEMMA_TOL = 1e-9

_HALF_PI = 0.5 * math.pi


class AdmissibilityError(ValueError):
    """The (parameters, segment) pair violates the statement's hypotheses."""


@dataclass(frozen=True)
class Segment:
    """Closed subinterval [a, b] of the statement domain."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("segment endpoints must be finite")
        if self.a > self.b:
            raise ValueError(f"need a <= b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of one segment-inequality check.

    ``lhs`` is the side that must not exceed ``rhs``; the margin
    rhs - lhs is therefore nonnegative (up to tolerance) on a pass.
    """

    statement: str
    alpha: float
    mu: float
    segment: Segment
    lhs: float
    rhs: float
    margin: float
    passed: bool
    tolerance: float
    note: str = ""


def _finish(statement, alpha, mu, seg, lhs, rhs, rel_tol, note="") -> LemmaReport:
    margin = rhs - lhs
    tol = rel_tol * max(abs(lhs), abs(rhs), 1.0)
    return LemmaReport(
        statement=statement,
        alpha=alpha,
        mu=mu,
        segment=seg,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        passed=margin >= -tol,
        tolerance=tol,
        note=note,
    )


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise AdmissibilityError(message)


def _check_exponents(alpha: float, mu: float) -> None:
    _require(alpha >= 0.0 and mu >= 0.0, f"need alpha, mu >= 0, got ({alpha}, {mu})")


def _within(l: float, threshold: float) -> bool:
    return l <= threshold * (1.0 + _THRESHOLD_FUZZ) + 1e-300


def check_segment_lemma(
    alpha: float,
    mu: float,
    seg: Segment,
    mirrored: bool = False,
    rel_tol: float = DEFAULT_LEMMA_TOL,
) -> LemmaReport:
    """Mass over [0, l] (or [1-l, 1] when mirrored) vs mass over the segment.

    Plain form requires alpha >= mu and l <= alpha/(alpha+mu); the
    mirrored form swaps the roles of the exponents and anchors the
    reference segment at the right endpoint.
    """
    _check_exponents(alpha, mu)
    _require(0.0 <= seg.a and seg.b <= 1.0, f"segment must lie in [0, 1], got {seg}")
    l = seg.length
    if mirrored:
        _require(mu >= alpha, f"mirrored form needs mu >= alpha, got ({alpha}, {mu})")
        _require(
            _within(l, length_ratios(mu, alpha).l),
            f"length {l} exceeds the admissible ratio for ({alpha}, {mu})",
        )
        lhs = segment_weight_integral(alpha, mu, 1.0 - l, 1.0)
    else:
        _require(alpha >= mu, f"plain form needs alpha >= mu, got ({alpha}, {mu})")
        _require(
            _within(l, length_ratios(alpha, mu).l),
            f"length {l} exceeds the admissible ratio for ({alpha}, {mu})",
        )
        lhs = segment_weight_integral(alpha, mu, 0.0, l)
    rhs = segment_weight_integral(alpha, mu, seg.a, seg.b)
    statement = MIRROR_COROLLARY if mirrored else SEGMENT_LEMMA
    return _finish(statement, alpha, mu, seg, lhs, rhs, rel_tol)


def check_segment_lower_bound(
    alpha: float,
    mu: float,
    seg: Segment,
    rel_tol: float = DEFAULT_LEMMA_TOL,
) -> LemmaReport:
    """Mass over the segment vs (1-l)^min(a,m) l^(max(a,m)+1)/(max(a,m)+1)."""
    _check_exponents(alpha, mu)
    _require(0.0 <= seg.a and seg.b <= 1.0, f"segment must lie in [0, 1], got {seg}")
    l = seg.length
    _require(l < 1.0, f"need l < 1, got {l}")
    _require(
        _within(l, length_ratios(alpha, mu).l_max),
        f"length {l} exceeds the admissible maximum for ({alpha}, {mu})",
    )
    hi = max(alpha, mu)
    bound = (1.0 - l) ** min(alpha, mu) * l ** (hi + 1.0) / (hi + 1.0)
    integral = segment_weight_integral(alpha, mu, seg.a, seg.b)
    return _finish(LOWER_BOUND_COROLLARY, alpha, mu, seg, bound, integral, rel_tol)


def check_trig_segment_bound(
    alpha: float,
    mu: float,
    seg: Segment,
    rel_tol: float = DEFAULT_LEMMA_TOL,
    acc: Accuracy | None = None,
) -> LemmaReport:
    """Trigonometric-weight mass over a segment of [0, pi/2] vs its bound.

    Requires l <= (pi/2) l_max and l < pi/2.  At alpha = mu = 0 the
    length convention makes the hypothesis vacuous while the conclusion
    is an exact identity; such inputs are accepted with any length and
    the report is tagged as the convention case.
    """
    _check_exponents(alpha, mu)
    _require(
        0.0 <= seg.a and seg.b <= _HALF_PI * (1.0 + _THRESHOLD_FUZZ),
        f"segment must lie in [0, pi/2], got {seg}",
    )
    l = seg.length
    note = ""
    if alpha == 0.0 and mu == 0.0:
        note = "convention-case"
    else:
        _require(l < _HALF_PI, f"need l < pi/2, got {l}")
        _require(
            _within(l, _HALF_PI * length_ratios(alpha, mu).l_max),
            f"length {l} exceeds the admissible maximum for ({alpha}, {mu})",
        )
    hi = max(alpha, mu)
    bound = (
        (1.0 - 2.0 * l / math.pi) ** min(alpha, mu)
        * (2.0 / math.pi) ** hi
        * l ** (hi + 1.0)
        / (hi + 1.0)
    )
    integral = integrate_weighted_trig(
        lambda t: np.ones_like(t),
        TrigWeightParams(alpha, mu),
        acc=acc,
        segment=(seg.a, seg.b),
    )
    return _finish(TRIG_SEGMENT_LEMMA, alpha, mu, seg, bound, integral, rel_tol, note)


@dataclass(frozen=True)
class SweepResult:
    reports: tuple[LemmaReport, ...]
    skipped: int


def _segment_grid(max_length: float, hi: float, n_len: int, n_pos: int):
    """Candidate (a, l) pairs: lengths on a uniform grid up to max_length
    (boundary included exactly), left endpoints uniform over [0, hi-l]."""
    if max_length <= 0.0:
        lengths = np.array([0.0])
    else:
        lengths = np.linspace(max_length / n_len, max_length, n_len)
    for l in lengths:
        for a in np.linspace(0.0, hi - l, n_pos):
            yield float(a), float(l)


def sweep_segments(
    statement: str,
    param_grid: Iterable[tuple[float, float]],
    segments_per_combo: int,
    rel_tol: float = DEFAULT_LEMMA_TOL,
    acc: Accuracy | None = None,
) -> SweepResult:
    """Run one statement over every (alpha, mu) combo and a segment grid.

    Returns all reports sorted by (alpha, mu, a, l) plus the count of
    (combo, segment) candidates rejected by the statement's hypotheses.
    """
    if statement not in ALL_STATEMENTS:
        raise ValueError(f"unknown statement {statement!r}")
    if segments_per_combo < 1:
        raise ValueError("segments_per_combo must be >= 1")
    n_len = max(1, math.isqrt(segments_per_combo))
    n_pos = max(1, -(-segments_per_combo // n_len))

    reports: list[LemmaReport] = []
    skipped = 0
    for alpha, mu in param_grid:
        ratios = length_ratios(alpha, mu)
        if statement == SEGMENT_LEMMA:
            max_length, hi = (ratios.l if alpha >= mu else -1.0), 1.0
        elif statement == MIRROR_COROLLARY:
            max_length, hi = (length_ratios(mu, alpha).l if mu >= alpha else -1.0), 1.0
        elif statement == LOWER_BOUND_COROLLARY:
            max_length, hi = ratios.l_max, 1.0
        else:
            max_length = _HALF_PI if alpha == mu == 0.0 else _HALF_PI * ratios.l_max
            hi = _HALF_PI
        if max_length < 0.0:
            skipped += n_len * n_pos
            continue
        for a, l in _segment_grid(max_length, hi, n_len, n_pos):
            seg = Segment(a, min(a + l, hi))
            try:
                if statement == SEGMENT_LEMMA:
                    reports.append(check_segment_lemma(alpha, mu, seg, False, rel_tol))
                elif statement == MIRROR_COROLLARY:
                    reports.append(check_segment_lemma(alpha, mu, seg, True, rel_tol))
                elif statement == LOWER_BOUND_COROLLARY:
                    reports.append(check_segment_lower_bound(alpha, mu, seg, rel_tol))
                else:
                    reports.append(check_trig_segment_bound(alpha, mu, seg, rel_tol, acc))
            except AdmissibilityError:
                skipped += 1
    reports.sort(key=lambda r: (r.alpha, r.mu, r.segment.a, r.segment.length))
    return SweepResult(tuple(reports), skipped)
