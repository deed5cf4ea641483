"""Weighted integration on [-1, 1] and over the trigonometric period.

Every integral is reduced to panels of the form

    int_lo^hi g(x) (x - lo)^e_lo (hi - x)^e_hi dx

with g smooth, which a Gauss-Jacobi rule handles after an affine map to
[-1, 1].  Rules come from the Golub-Welsch construction: nodes are the
eigenvalues of the symmetric tridiagonal matrix of the Jacobi three-term
recurrence, weights follow from the orthonormal-polynomial sums.  Rule
sizes double until two successive totals agree within the requested
accuracy.

``oracle_integrate`` is an intentionally independent cross-check: a
composite midpoint rule on a mesh geometrically graded into every
singular point of the weight, using none of the Gauss machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .weights import TrigWeightParams, WeightParams, log_beta

Integrand = Callable[[np.ndarray], np.ndarray]

_HALF_PI = 0.5 * math.pi
_ENDPOINT_SNAP = 1e-12


@dataclass(frozen=True)
class Accuracy:
    """Convergence targets for the doubling integrator."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_points: int = 4096

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_points < 1:
            raise ValueError("max_points must be positive")


DEFAULT_ACCURACY = Accuracy()

_INITIAL_POINTS = 16


@dataclass(frozen=True)
class IntegralResult:
    """Converged integral value with its doubling-difference error estimate."""

    value: float
    error: float
    points: int


class QuadratureError(RuntimeError):
    """Rule construction failed (eigenvalue solver did not converge)."""


class QuadratureConvergenceError(RuntimeError):
    """Doubling exhausted the point budget without the required agreement.

    Carries the last two iterates so a caller can still use the best
    available estimate.
    """

    def __init__(self, previous: float, latest: float, points: int):
        super().__init__(
            f"no convergence within {points} points per panel: "
            f"last iterates {previous!r} -> {latest!r}"
        )
        self.previous = previous
        self.latest = latest
        self.points = points


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for int_-1^1 f(s) (1-s)^a (1+s)^b ds."""

    nodes: np.ndarray
    weights: np.ndarray
    jacobi_exponents: tuple[float, float]
    domain: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self) -> None:
        if self.nodes.shape != self.weights.shape:
            raise ValueError("node and weight counts differ")
        lo, hi = self.domain
        if not (np.all(self.nodes > lo) and np.all(self.nodes < hi)):
            raise ValueError("nodes must lie strictly inside the domain")
        if not np.all(np.diff(self.nodes) > 0.0):
            raise ValueError("nodes must be strictly increasing")
        if not np.all(self.weights > 0.0):
            raise ValueError("weights must all be positive")

    def apply(self, g: Integrand) -> float:
        return float(self.weights @ _eval_integrand(g, self.nodes))


def _eval_integrand(g: Integrand, x: np.ndarray) -> np.ndarray:
    y = np.asarray(g(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _jacobi_recurrence(a: float, b: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the m-point Jacobi matrix for the
    weight (1-s)^a (1+s)^b (monic three-term recurrence coefficients)."""
    diag = np.empty(m)
    offsq = np.empty(max(m - 1, 0))
    ab = a + b
    diag[0] = (b - a) / (ab + 2.0)
    if m > 1:
        offsq[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
        k = np.arange(1, m, dtype=float)
        s = 2.0 * k + ab
        diag[1:] = (b * b - a * a) / (s * (s + 2.0))
        if m > 2:
            k = k[1:]
            s = s[1:]
            offsq[1:] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s * s - 1.0))
    return diag, np.sqrt(offsq)


def weight_mass(a: float, b: float) -> float:
    """Exact total mass int_-1^1 (1-s)^a (1+s)^b ds = 2^(a+b+1) B(a+1, b+1)."""
    return math.exp((a + b + 1.0) * math.log(2.0) + log_beta(a + 1.0, b + 1.0))


_RULE_CACHE: dict[tuple[float, float, int], QuadratureRule] = {}


def gauss_jacobi_rule(a_exp: float, b_exp: float, m: int) -> QuadratureRule:
    """m-point Gauss rule for the weight (1-s)^a_exp (1+s)^b_exp on [-1, 1].

    Nodes are eigenvalues of the symmetric tridiagonal recurrence matrix;
    the weight at each node is the reciprocal of the squared-sum of the
    orthonormal polynomials there, so the total recovers the weight mass
    exactly.  Rules are cached per (a_exp, b_exp, m).
    """
    if not (a_exp > -1.0 and b_exp > -1.0):
        raise ValueError(f"Jacobi exponents must be > -1, got ({a_exp}, {b_exp})")
    if m < 1:
        raise ValueError(f"rule size must be >= 1, got {m}")
    key = (a_exp, b_exp, m)
    cached = _RULE_CACHE.get(key)
    if cached is not None:
        return cached

    diag, off = _jacobi_recurrence(a_exp, b_exp, m)
    if m == 1:
        nodes = diag.copy()
    else:
        try:
            nodes = eigvalsh_tridiagonal(diag, off)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise QuadratureError(
                f"eigenvalue solver failed for exponents ({a_exp}, {b_exp}), m={m}"
            ) from exc
    mass = weight_mass(a_exp, b_exp)

    def orthonormal_sweep(x: np.ndarray):
        """Values of the first m orthonormal polynomials at x: returns the
        squared sum, plus the (unnormalized) next polynomial and its
        derivative for Newton refinement of the nodes."""
        p_prev = np.zeros_like(x)
        p_cur = np.full_like(x, 1.0 / math.sqrt(mass))
        d_prev = np.zeros_like(x)
        d_cur = np.zeros_like(x)
        total = p_cur * p_cur
        for k in range(m - 1):
            back = off[k - 1] if k > 0 else 0.0
            p_next = ((x - diag[k]) * p_cur - back * p_prev) / off[k]
            d_next = ((x - diag[k]) * d_cur + p_cur - back * d_prev) / off[k]
            total += p_next * p_next
            p_prev, p_cur = p_cur, p_next
            d_prev, d_cur = d_cur, d_next
        back = off[m - 2] if m > 1 else 0.0
        q = (x - diag[m - 1]) * p_cur - back * p_prev
        dq = (x - diag[m - 1]) * d_cur + p_cur - back * d_prev
        return total, q, dq

    # two Newton corrections take the eigenvalue nodes to machine-exact
    # roots, which the steep Christoffel sums need for 1e-12 weights
    for _ in range(2):
        _, q, dq = orthonormal_sweep(nodes)
        nodes = nodes - q / dq
    total, _, _ = orthonormal_sweep(nodes)
    weights = 1.0 / total

    rule = QuadratureRule(nodes, weights, (a_exp, b_exp))
    _RULE_CACHE[key] = rule
    return rule


@dataclass(frozen=True)
class _Panel:
    """One weighted subinterval: int_lo^hi g(x) (x-lo)^e_lo (hi-x)^e_hi dx."""

    lo: float
    hi: float
    e_lo: float
    e_hi: float
    g: Integrand = field(compare=False)

    def value(self, m: int) -> float:
        rule = gauss_jacobi_rule(self.e_hi, self.e_lo, m)
        half = 0.5 * (self.hi - self.lo)
        x = self.lo + half * (rule.nodes + 1.0)
        scale = half ** (1.0 + self.e_lo + self.e_hi)
        return scale * float(rule.weights @ _eval_integrand(self.g, x))


def _integrate_panels(panels: Sequence[_Panel], acc: Accuracy) -> IntegralResult:
    m = min(_INITIAL_POINTS, acc.max_points)
    iterates = [math.fsum(p.value(m) for p in panels)]
    while 2 * m <= acc.max_points:
        m *= 2
        current = math.fsum(p.value(m) for p in panels)
        if abs(current - iterates[-1]) <= max(acc.rel_tol * abs(current), acc.abs_tol):
            return IntegralResult(current, abs(current - iterates[-1]), m)
        iterates.append(current)
    raise QuadratureConvergenceError(iterates[-2] if len(iterates) > 1 else iterates[-1], iterates[-1], m)


def integrate_weighted_algebraic(
    f: Integrand,
    w: WeightParams,
    acc: Accuracy | None = None,
    full_output: bool = False,
):
    """int_-1^1 f(x) (1-x)^alpha (1+x)^beta |x|^gamma dx.

    The domain splits at 0; on each half an affine map turns the |x|^gamma
    factor and the outer endpoint factor into the Jacobi weight while the
    remaining endpoint factor, smooth on that half, is folded into f.
    """
    acc = acc or DEFAULT_ACCURACY
    alpha, beta, gamma = w.alpha, w.beta, w.gamma
    panels = [
        _Panel(-1.0, 0.0, beta, gamma, lambda x: _eval_integrand(f, x) * (1.0 - x) ** alpha),
        _Panel(0.0, 1.0, gamma, alpha, lambda x: _eval_integrand(f, x) * (1.0 + x) ** beta),
    ]
    result = _integrate_panels(panels, acc)
    return result if full_output else result.value


def _trig_panels(
    f: Integrand, tw: TrigWeightParams, segment: tuple[float, float] | None
) -> list[_Panel]:
    e = 0.5 * (tw.alpha - 1.0)
    mu = tw.mu
    if segment is None:
        # Substituting x = +-cos t on each quarter period maps all four
        # monotone branches onto int_0^1 . (1-x^2)^e x^mu dx.
        def g(x: np.ndarray) -> np.ndarray:
            t = np.arccos(x)
            s = np.arccos(-x)
            total = (
                _eval_integrand(f, t)
                + _eval_integrand(f, -t)
                + _eval_integrand(f, s)
                + _eval_integrand(f, -s)
            )
            return total * (1.0 + x) ** e

        return [_Panel(0.0, 1.0, mu, e, g)]

    t_lo, t_hi = segment
    if not (-_ENDPOINT_SNAP <= t_lo <= t_hi <= _HALF_PI + _ENDPOINT_SNAP):
        raise ValueError(f"segment must lie inside [0, pi/2], got [{t_lo}, {t_hi}]")
    x_hi = 1.0 if t_lo <= _ENDPOINT_SNAP else math.cos(t_lo)
    x_lo = 0.0 if t_hi >= _HALF_PI - _ENDPOINT_SNAP else math.cos(t_hi)
    e_lo = mu if x_lo == 0.0 else 0.0
    e_hi = e if x_hi == 1.0 else 0.0

    def g_seg(x: np.ndarray) -> np.ndarray:
        val = _eval_integrand(f, np.arccos(x)) * (1.0 + x) ** e
        if e_hi == 0.0:
            val = val * (1.0 - x) ** e
        if e_lo == 0.0:
            val = val * x ** mu
        return val

    return [_Panel(x_lo, x_hi, e_lo, e_hi, g_seg)]


def integrate_weighted_trig(
    f: Integrand,
    tw: TrigWeightParams,
    acc: Accuracy | None = None,
    segment: tuple[float, float] | None = None,
    full_output: bool = False,
):
    """int f(t) |sin t|^alpha |cos t|^mu dt over [-pi, pi].

    Splitting at the quarter points and substituting the cosine on each
    monotone branch reduces the integral to Jacobi-weighted panels with
    exponents ((alpha-1)/2, mu).  With ``segment=(a, b)``, a subinterval
    of [0, pi/2], only that piece is integrated (exponents are applied
    only at segment ends that touch a singular point).
    """
    acc = acc or DEFAULT_ACCURACY
    if segment is not None and segment[0] == segment[1]:
        return IntegralResult(0.0, 0.0, 0) if full_output else 0.0
    result = _integrate_panels(_trig_panels(f, tw, segment), acc)
    return result if full_output else result.value


# --- independent brute-force oracle -----------------------------------------

_GRADE_RATIO = 0.7
_GRADE_LEVELS = 80


def _graded_cells(lo: float, hi: float, singular: Sequence[float]) -> np.ndarray:
    """Cell boundaries on [lo, hi], geometrically graded into each listed
    singular point (all of which are endpoints of the smooth blocks)."""
    points = sorted({lo, hi, *(s for s in singular if lo < s < hi)})
    boundaries: list[float] = []
    ratios = _GRADE_RATIO ** np.arange(_GRADE_LEVELS, 0, -1)
    for left, right in zip(points[:-1], points[1:]):
        mid = 0.5 * (left + right)
        boundaries.append(left)
        boundaries.extend(left + (mid - left) * ratios)
        boundaries.append(mid)
        boundaries.extend(right - (right - left) * 0.5 * ratios[::-1])
    boundaries.append(points[-1])
    return np.asarray(boundaries)


def oracle_integrate(
    f: Integrand,
    w: WeightParams | TrigWeightParams,
    panels: int,
    domain: tuple[float, float] | None = None,
) -> float:
    """Composite midpoint cross-check of the weighted integrals.

    The mesh is geometrically graded (ratio 0.7, 80 levels) toward every
    singular point of the weight; each graded cell is subdivided into
    equal midpoint panels so the total panel count is about ``panels``.
    Deterministic, and entirely independent of the Gauss machinery.
    """
    if panels < 1000:
        raise ValueError(f"need at least 1000 panels, got {panels}")
    if isinstance(w, TrigWeightParams):
        lo, hi = domain if domain is not None else (-math.pi, math.pi)
        singular = [-math.pi, -_HALF_PI, 0.0, _HALF_PI, math.pi]
        tw = w

        def weight_at(x: np.ndarray) -> np.ndarray:
            return np.abs(np.sin(x)) ** tw.alpha * np.abs(np.cos(x)) ** tw.mu

    else:
        lo, hi = domain if domain is not None else (-1.0, 1.0)
        singular = [-1.0, 0.0, 1.0]
        aw = w

        def weight_at(x: np.ndarray) -> np.ndarray:
            return (
                (1.0 - x) ** aw.alpha * (1.0 + x) ** aw.beta * np.abs(x) ** aw.gamma
            )

    cells = _graded_cells(lo, hi, singular)
    n_cells = len(cells) - 1
    per_cell = max(1, panels // n_cells)
    fractions = (np.arange(per_cell) + 0.5) / per_cell

    left = cells[:-1]
    width = np.diff(cells)
    mids = (left[:, None] + width[:, None] * fractions[None, :]).ravel()
    dx = np.repeat(width / per_cell, per_cell)
    values = _eval_integrand(f, mids) * weight_at(mids)
    return float(np.sum(values * dx))
