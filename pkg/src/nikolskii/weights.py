"""Generalized Jacobi weights and the closed-form segment integral.

The algebraic weight on [-1, 1] is

    w(x) = (1 - x)^alpha * (1 + x)^beta * |x|^gamma,

with all three exponents > -1 so the weight is integrable.  The
trigonometric counterpart on the line is |sin t|^alpha * |cos t|^mu with
alpha, mu >= 0.  Both use the convention 0^0 = 1, so zero exponents
reduce everything to the unweighted classics.

The segment integral int_a^b x^alpha (1-x)^mu dx is evaluated through the
regularized incomplete beta function (continued fraction), which serves
as the analytic oracle for the segment inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


def _pow_factor(base: float, exponent: float) -> float:
    """base**exponent with the 0^0 = 1 convention and an infinity
    sentinel for 0 raised to a negative power."""
    if base == 0.0:
        if exponent > 0.0:
            return 0.0
        if exponent == 0.0:
            return 1.0
        return INF
    return base ** exponent


@dataclass(frozen=True)
class WeightParams:
    """Exponent triple of the algebraic weight (1-x)^alpha (1+x)^beta |x|^gamma."""

    alpha: float
    beta: float
    gamma: float = 0.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not v > -1.0:
                raise ValueError(f"{name} must be > -1 for an integrable weight, got {v}")


@dataclass(frozen=True)
class TrigWeightParams:
    """Exponent pair of the trigonometric weight |sin t|^alpha |cos t|^mu."""

    alpha: float
    mu: float

    def __post_init__(self) -> None:
        if self.alpha < 0.0 or self.mu < 0.0:
            raise ValueError(
                f"trigonometric weight needs alpha, mu >= 0, got ({self.alpha}, {self.mu})"
            )


@dataclass(frozen=True)
class NikolskiiParams:
    """Parameter tuple of the different-metrics inequality.

    Requires alpha >= beta >= -1/2, mu >= 0, 1 <= p < q <= inf and a
    positive integer degree n.  q = inf is represented by ``math.inf``
    with 1/q = 0 in all exponent arithmetic.
    """

    alpha: float
    beta: float
    mu: float
    p: float
    q: float
    n: int

    def __post_init__(self) -> None:
        if not (self.alpha >= self.beta >= -0.5):
            raise ValueError(f"need alpha >= beta >= -1/2, got ({self.alpha}, {self.beta})")
        if self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu}")
        if not (1.0 <= self.p < self.q):
            raise ValueError(f"need 1 <= p < q, got p={self.p}, q={self.q}")
        if math.isinf(self.p):
            raise ValueError("p must be finite")
        if self.n < 1:
            raise ValueError(f"degree n must be >= 1, got {self.n}")

    @property
    def weight(self) -> WeightParams:
        """The algebraic weight the inequality is stated for (gamma = mu)."""
        return WeightParams(self.alpha, self.beta, self.mu)

    @property
    def metric_gap(self) -> float:
        """1/p - 1/q, with 1/inf = 0."""
        inv_q = 0.0 if math.isinf(self.q) else 1.0 / self.q
        return 1.0 / self.p - inv_q

    @property
    def degree_exponent(self) -> float:
        """max(2(alpha+1), mu+1), the power of n in the inequality."""
        return max(2.0 * (self.alpha + 1.0), self.mu + 1.0)


def weight_eval(w: WeightParams, x: float) -> float:
    """Evaluate (1-x)^alpha (1+x)^beta |x|^gamma at x in [-1, 1].

    Returns ``math.inf`` where the weight diverges (an endpoint with a
    negative exponent, or x = 0 with gamma < 0); evaluation is total on
    the closed interval.
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [-1, 1], got {x}")
    return (
        _pow_factor(1.0 - x, w.alpha)
        * _pow_factor(1.0 + x, w.beta)
        * _pow_factor(abs(x), w.gamma)
    )


def trig_weight_eval(tw: TrigWeightParams, t: float) -> float:
    """Evaluate |sin t|^alpha |cos t|^mu (0^0 = 1)."""
    return _pow_factor(abs(math.sin(t)), tw.alpha) * _pow_factor(abs(math.cos(t)), tw.mu)


# --- regularized incomplete beta -------------------------------------------

_BETACF_MAX_ITER = 300
_BETACF_EPS = 1e-16
_BETACF_FPMIN = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, evaluated by the
    modified Lentz recurrence.  Converges fast for x < (a+1)/(a+b+2)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETACF_FPMIN:
        d = _BETACF_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_FPMIN:
            d = _BETACF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETACF_FPMIN:
            c = _BETACF_FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_FPMIN:
            d = _BETACF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETACF_FPMIN:
            c = _BETACF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) = (1/B(a,b)) int_0^x u^(a-1) (1-u)^(b-1) du for a, b > 0.

    Uses the continued fraction directly when x is below the midpoint
    rule (a+1)/(a+b+2) and the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    otherwise, giving uniform relative accuracy around 1e-15.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"incomplete beta needs a, b > 0, got ({a}, {b})")
    if x < 0.0 or x > 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def log_beta(a: float, b: float) -> float:
    """log of the complete beta function B(a, b)."""
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


_FALLBACK_NODES: tuple[tuple[float, ...], tuple[float, ...]] | None = None


def _legendre_fallback(alpha: float, mu: float, lo: float, hi: float) -> float:
    """Plain 48-point Gauss-Legendre on [lo, hi]; used only for interior
    segments whose mass is a tiny fraction of the cumulative value, where
    differencing the incomplete beta would cancel.  The integrand is
    analytic well beyond such segments, so this is exact to roundoff."""
    global _FALLBACK_NODES
    if _FALLBACK_NODES is None:
        import numpy

        nodes, weights = numpy.polynomial.legendre.leggauss(48)
        _FALLBACK_NODES = (tuple(nodes), tuple(weights))
    nodes, weights = _FALLBACK_NODES
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    total = 0.0
    for s, w in zip(nodes, weights):
        x = mid + half * s
        total += w * x**alpha * (1.0 - x) ** mu
    return half * total


def segment_weight_integral(alpha: float, mu: float, lo: float, hi: float) -> float:
    """int_lo^hi x^alpha (1-x)^mu dx for 0 <= lo <= hi <= 1, alpha, mu >= 0.

    Evaluated as B(alpha+1, mu+1) * (I_hi - I_lo) with the regularized
    incomplete beta.  Segments touching x = 1 are reflected onto the
    other tail first, and relatively narrow interior segments fall back
    to direct Gauss-Legendre, keeping the relative accuracy near 1e-14
    everywhere.
    """
    if alpha < 0.0 or mu < 0.0:
        raise ValueError(f"exponents must be >= 0, got ({alpha}, {mu})")
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    if lo == hi:
        return 0.0
    a = alpha + 1.0
    b = mu + 1.0
    scale = math.exp(log_beta(a, b))
    if lo == 0.0:
        return scale * regularized_incomplete_beta(a, b, hi)
    if hi == 1.0:
        # reflect x -> 1-x so the cumulative starts at the segment
        return scale * regularized_incomplete_beta(b, a, 1.0 - lo)
    i_hi = regularized_incomplete_beta(a, b, hi)
    i_lo = regularized_incomplete_beta(a, b, lo)
    diff = i_hi - i_lo
    if diff > 1e-3 * i_hi:
        return scale * diff
    return _legendre_fallback(alpha, mu, lo, hi)
