"""Explicit constants of the uniform-norm and different-metrics bounds.

``bari_constant`` is the factor in front of n^((max(alpha,mu)+1)/p) in the
uniform-norm bound for trigonometric polynomials; ``nikolskii_constant``
is its algebraic counterpart, related to it by an exact identity:

    nikolskii_constant(a, b, m, p, n)
        == (2^(1+(a-b)/p) * bari_constant(2a+1, m, p, n))^p.

Both decrease monotonically in n toward a finite limit (the factor
(1 - 1/(pi n))^(-...) drops out), which the ``*_limit`` functions return.
"""

from __future__ import annotations

import math
from typing import NamedTuple


class LengthRatios(NamedTuple):
    """Admissible-length thresholds for the segment inequalities."""

    l: float
    l_max: float


def length_ratios(alpha: float, mu: float) -> LengthRatios:
    """Return (alpha/(alpha+mu), max(alpha,mu)/(alpha+mu)), both 0 at (0, 0).

    The first bounds the segment length in the increasing-side segment
    inequality, the second in the two-sided lower bound.  When
    max(alpha, mu) > 0 the second always lies in [1/2, 1].
    """
    if alpha < 0.0 or mu < 0.0:
        raise ValueError(f"exponents must be >= 0, got ({alpha}, {mu})")
    total = alpha + mu
    if total == 0.0:
        return LengthRatios(0.0, 0.0)
    return LengthRatios(alpha / total, max(alpha, mu) / total)


def _check_bari_args(alpha: float, mu: float, p: float, n: int) -> None:
    if alpha < 0.0 or mu < 0.0:
        raise ValueError(f"exponents must be >= 0, got ({alpha}, {mu})")
    if not (1.0 <= p < math.inf):
        raise ValueError(f"p must lie in [1, inf), got {p}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


def bari_constant(alpha: float, mu: float, p: float, n: int) -> float:
    """Constant of the trigonometric uniform-norm bound:

    (1 - 1/(pi n))^(-min(alpha,mu)/p) * 2^(1+1/p)
        * (max(alpha,mu)+1)^(1/p) * pi^(max(alpha,mu)/p).
    """
    _check_bari_args(alpha, mu, p, n)
    return (
        (1.0 - 1.0 / (math.pi * n)) ** (-min(alpha, mu) / p)
        * 2.0 ** (1.0 + 1.0 / p)
        * (max(alpha, mu) + 1.0) ** (1.0 / p)
        * math.pi ** (max(alpha, mu) / p)
    )


def bari_constant_limit(alpha: float, mu: float, p: float) -> float:
    """n -> inf limit of ``bari_constant`` (the n-dependent factor drops)."""
    _check_bari_args(alpha, mu, p, 1)
    return (
        2.0 ** (1.0 + 1.0 / p)
        * (max(alpha, mu) + 1.0) ** (1.0 / p)
        * math.pi ** (max(alpha, mu) / p)
    )


def _check_nikolskii_args(alpha: float, beta: float, mu: float, p: float, n: int) -> None:
    if not (alpha >= beta >= -0.5):
        raise ValueError(f"need alpha >= beta >= -1/2, got ({alpha}, {beta})")
    if mu < 0.0:
        raise ValueError(f"mu must be >= 0, got {mu}")
    if not (1.0 <= p < math.inf):
        raise ValueError(f"p must lie in [1, inf), got {p}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


def nikolskii_constant(alpha: float, beta: float, mu: float, p: float, n: int) -> float:
    """Constant of the algebraic different-metrics bound:

    2^(2p+1+alpha-beta) * (1 - 1/(pi n))^(-min(2 alpha+1, mu))
        * max(2(alpha+1), mu+1) * pi^(max(2 alpha+1, mu)).
    """
    _check_nikolskii_args(alpha, beta, mu, p, n)
    two_alpha = 2.0 * alpha + 1.0
    return (
        2.0 ** (2.0 * p + 1.0 + alpha - beta)
        * (1.0 - 1.0 / (math.pi * n)) ** (-min(two_alpha, mu))
        * max(2.0 * (alpha + 1.0), mu + 1.0)
        * math.pi ** max(two_alpha, mu)
    )


def nikolskii_constant_limit(alpha: float, beta: float, mu: float, p: float) -> float:
    """n -> inf limit of ``nikolskii_constant``."""
    _check_nikolskii_args(alpha, beta, mu, p, 1)
    two_alpha = 2.0 * alpha + 1.0
    return (
        2.0 ** (2.0 * p + 1.0 + alpha - beta)
        * max(2.0 * (alpha + 1.0), mu + 1.0)
        * math.pi ** max(two_alpha, mu)
    )


def constant_limits(alpha: float, mu: float, p: float):
    """Bundle the trig-constant limit with a callable for the algebraic one.

    Returns (limit of bari_constant(alpha, mu, p, n),
    function (alpha, beta, mu, p) -> limit of nikolskii_constant).
    """
    return bari_constant_limit(alpha, mu, p), nikolskii_constant_limit
