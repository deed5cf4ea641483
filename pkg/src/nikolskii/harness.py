"""Randomized and structured verification of the norm inequalities.

Two inequalities are exercised: the uniform-norm bound for trigonometric
polynomials against the |sin t|^a |cos t|^m weight, and the
different-metrics bound for algebraic polynomials against the
generalized Jacobi weight with gamma = mu.  Both are checked as

    lhs <= rhs * (1 + 1e-8) + 1e-12,

a band wide enough to absorb quadrature noise on either side while still
catching any genuine violation.  The module also checks the listed
properties of the two explicit constants and runs the extremal-ratio
search that probes how the best possible norm ratio grows with the
degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Literal, Sequence

import numpy as np
from scipy.optimize import minimize

from .constants import (
    bari_constant,
    bari_constant_limit,
    nikolskii_constant,
    nikolskii_constant_limit,
)
from .polynomials import AlgebraicPoly, TrigPoly, lp_norm, random_poly, uniform_norm
from .quadrature import Accuracy, QuadratureConvergenceError, integrate_weighted_trig
from .weights import NikolskiiParams, TrigWeightParams

BARI_LEMMA = "bari-lemma"
NIKOLSKII_THEOREM = "nikolskii-theorem"

RATIO_REL_SLACK = 1e-8
RATIO_ABS_SLACK = 1e-12

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, index: int) -> int:
    """Per-task seed: splitmix64 of master_seed + (index+1) * golden gamma.

    A documented, platform-independent derivation so parallel sweeps and
    reruns agree bit for bit.
    """
    z = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def suite_accuracy(p: float) -> Accuracy:
    """Integration targets matched to the smoothness of |poly|^p.

    Even integer powers make the integrand a polynomial times an analytic
    factor, so the default targets are reachable.  Odd and fractional
    powers leave kinks at the zeros, where Gauss panels converge only
    algebraically; the targets below are what doubling can actually meet
    within the point cap, and they sit orders of magnitude below the
    slack of the inequalities being verified.
    """
    if math.isinf(p):
        return Accuracy()
    if p == int(p) and int(p) % 2 == 0:
        return Accuracy()
    if p >= 3.0:
        return Accuracy(rel_tol=1e-7, abs_tol=1e-12)
    return Accuracy(rel_tol=3e-5, abs_tol=1e-10)


@dataclass(frozen=True)
class InequalityRecord:
    """One verified instance: lhs, rhs and their ratio (pass iff <= 1 + tol)."""

    statement: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    n: int
    p: float
    alpha: float
    mu: float
    beta: float | None = None
    q: float | None = None
    seed: int | None = None
    exact_degree: int = 0
    note: str = ""


def _ratio_record(statement, lhs, rhs, rel_slack, abs_slack, **fields) -> InequalityRecord:
    if rhs > 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else math.inf
    passed = lhs <= rhs * (1.0 + rel_slack) + abs_slack
    return InequalityRecord(
        statement=statement, lhs=lhs, rhs=rhs, ratio=ratio, passed=passed, **fields
    )


CapPolicy = Literal["raise", "use-last"]


def verify_bari(
    T: TrigPoly,
    tw: TrigWeightParams,
    p: float,
    n: int | None = None,
    acc: Accuracy | None = None,
    rel_slack: float = RATIO_REL_SLACK,
    abs_slack: float = RATIO_ABS_SLACK,
    on_convergence_failure: CapPolicy = "raise",
) -> InequalityRecord:
    """Uniform norm of T vs its weighted-L_p bound at degree n.

    n defaults to the polynomial's degree bound (at least 1).  With
    ``on_convergence_failure="use-last"`` a point-cap overrun in the
    quadrature is downgraded to a note on the record, keeping bulk
    sweeps alive; the default propagates it.
    """
    if math.isinf(p) or p < 1.0:
        raise ValueError(f"p must lie in [1, inf), got {p}")
    if n is None:
        n = max(1, T.degree_bound)
    if n < 1 or T.degree_bound > n:
        raise ValueError(f"need n >= degree bound of T >= 1, got n={n}")
    acc = acc or suite_accuracy(p)
    note = "lmax-convention" if tw.alpha == 0.0 and tw.mu == 0.0 else ""
    fields = dict(
        n=n, p=p, alpha=tw.alpha, mu=tw.mu, exact_degree=T.exact_degree, note=note
    )
    lhs = uniform_norm(T)
    if lhs == 0.0:
        return _ratio_record(BARI_LEMMA, 0.0, 0.0, rel_slack, abs_slack, **fields)
    try:
        integral = integrate_weighted_trig(lambda t: np.abs(T(t)) ** p, tw, acc)
    except QuadratureConvergenceError as exc:
        if on_convergence_failure != "use-last":
            raise
        integral = exc.latest
        fields["note"] = (note + ";" if note else "") + "quadrature-cap"
    rhs = (
        bari_constant(tw.alpha, tw.mu, p, n)
        * n ** ((max(tw.alpha, tw.mu) + 1.0) / p)
        * max(integral, 0.0) ** (1.0 / p)
    )
    return _ratio_record(BARI_LEMMA, lhs, rhs, rel_slack, abs_slack, **fields)


def verify_nikolskii(
    P: AlgebraicPoly,
    params: NikolskiiParams,
    acc: Accuracy | None = None,
    rel_slack: float = RATIO_REL_SLACK,
    abs_slack: float = RATIO_ABS_SLACK,
    on_convergence_failure: CapPolicy = "raise",
) -> InequalityRecord:
    """Weighted L_q norm of P vs its L_p bound at the parameters' degree."""
    if P.degree_bound > params.n:
        raise ValueError(
            f"polynomial degree bound {P.degree_bound} exceeds n = {params.n}"
        )
    weight = params.weight
    fields = dict(
        n=params.n,
        p=params.p,
        q=params.q,
        alpha=params.alpha,
        beta=params.beta,
        mu=params.mu,
        exact_degree=P.exact_degree,
    )
    gap = params.metric_gap
    try:
        lhs = lp_norm(P, params.q, weight, acc)
        rhs_norm = lp_norm(P, params.p, weight, acc or suite_accuracy(params.p))
    except QuadratureConvergenceError as exc:
        if on_convergence_failure != "use-last":
            raise
        fields["note"] = "quadrature-cap"
        # redo both sides at the loosest target, accepting the last iterate
        loose = Accuracy(rel_tol=1e-3, abs_tol=1e-8)
        lhs = lp_norm(P, params.q, weight, loose)
        rhs_norm = lp_norm(P, params.p, weight, loose)
    rhs = (
        nikolskii_constant(params.alpha, params.beta, params.mu, params.p, params.n) ** gap
        * params.n ** (params.degree_exponent * gap)
        * rhs_norm
    )
    return _ratio_record(NIKOLSKII_THEOREM, lhs, rhs, rel_slack, abs_slack, **fields)


# --- randomized suites --------------------------------------------------------

BARI_DEGREES = (1, 2, 4, 8, 16, 32, 64)
BARI_EXPONENTS = (0.0, 0.5, 1.0, 2.5)
BARI_PS = (1.0, 2.0, 3.0)

NIKOLSKII_DEGREES = (1, 2, 4, 8, 16, 32, 64)
NIKOLSKII_AB = ((-0.5, -0.5), (0.0, 0.0), (1.0, 0.0), (2.0, 1.0))
NIKOLSKII_MUS = (0.0, 1.0)
NIKOLSKII_PQS = ((1.0, 2.0), (1.0, math.inf), (2.0, 4.0), (2.0, math.inf))


def run_bari_suite(
    trials: int = 10_000,
    degrees: Sequence[int] = BARI_DEGREES,
    exponents: Sequence[float] = BARI_EXPONENTS,
    ps: Sequence[float] = BARI_PS,
    master_seed: int = 0,
    rel_slack: float = RATIO_REL_SLACK,
    abs_slack: float = RATIO_ABS_SLACK,
) -> list[InequalityRecord]:
    """Seeded random trigonometric polynomials cycled over the parameter grid."""
    combos = [
        (n, a, m, p) for n in degrees for a in exponents for m in exponents for p in ps
    ]
    records = []
    for i in range(trials):
        n, a, m, p = combos[i % len(combos)]
        seed = derive_seed(master_seed, i)
        T = random_poly(n, seed, "trig")
        rec = verify_bari(
            T,
            TrigWeightParams(a, m),
            p,
            n,
            rel_slack=rel_slack,
            abs_slack=abs_slack,
            on_convergence_failure="use-last",
        )
        records.append(replace(rec, seed=seed))
    records.sort(key=lambda r: (r.n, r.alpha, r.mu, r.p, r.seed))
    return records


def run_nikolskii_suite(
    trials: int = 10_000,
    degrees: Sequence[int] = NIKOLSKII_DEGREES,
    ab_pairs: Sequence[tuple[float, float]] = NIKOLSKII_AB,
    mus: Sequence[float] = NIKOLSKII_MUS,
    pq_pairs: Sequence[tuple[float, float]] = NIKOLSKII_PQS,
    master_seed: int = 0,
    rel_slack: float = RATIO_REL_SLACK,
    abs_slack: float = RATIO_ABS_SLACK,
) -> list[InequalityRecord]:
    """Seeded random algebraic polynomials cycled over the parameter grid."""
    combos = [
        (n, a, b, m, p, q)
        for n in degrees
        for (a, b) in ab_pairs
        for m in mus
        for (p, q) in pq_pairs
    ]
    records = []
    for i in range(trials):
        n, a, b, m, p, q = combos[i % len(combos)]
        seed = derive_seed(master_seed, i)
        P = random_poly(n, seed, "algebraic")
        params = NikolskiiParams(a, b, m, p, q, n)
        rec = verify_nikolskii(
            P,
            params,
            rel_slack=rel_slack,
            abs_slack=abs_slack,
            on_convergence_failure="use-last",
        )
        records.append(replace(rec, seed=seed))
    records.sort(
        key=lambda r: (r.n, r.alpha, r.beta, r.mu, r.p, math.inf if r.q is None else r.q, r.seed)
    )
    return records


# --- constant properties ------------------------------------------------------

CONSTANTS_ALPHAS = (-0.5, 0.0, 0.5, 1.0, 2.0)
CONSTANTS_BETAS = (-0.5, 0.0, 1.0)
CONSTANTS_MUS = (0.0, 0.5, 1.0, 3.0)
CONSTANTS_PS = (1.0, 1.5, 2.0, 4.0)
CONSTANTS_NS = (1, 2, 4, 16, 256)

IDENTITY_RTOL = 1e-12
INEQUALITY_SLACK = 1e-12
LIMIT_N = 10**6
LIMIT_RTOL = 1e-4

_UNIFORM_BOUND = 8.0 * math.pi**2 / (math.pi - 1.0)


@dataclass(frozen=True)
class ConstantCheckRecord:
    check: str
    alpha: float
    mu: float
    p: float
    lhs: float
    rhs: float
    passed: bool
    beta: float | None = None
    n: int | None = None


@dataclass(frozen=True)
class ConstantsReport:
    records: tuple[ConstantCheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> tuple[ConstantCheckRecord, ...]:
        return tuple(r for r in self.records if not r.passed)


def _rel_close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def verify_constant_properties(
    alphas: Sequence[float] = CONSTANTS_ALPHAS,
    betas: Sequence[float] = CONSTANTS_BETAS,
    mus: Sequence[float] = CONSTANTS_MUS,
    ps: Sequence[float] = CONSTANTS_PS,
    ns: Sequence[int] = CONSTANTS_NS,
) -> ConstantsReport:
    """Check the listed constant properties on every admissible grid point.

    Identities are required to 1e-12 relative, inequalities up to 1e-12
    slack, and the n -> inf limits are compared at n = 10^6 within 1e-4
    relative.  Checks whose hypotheses a grid point does not satisfy are
    skipped at that point.
    """
    records: list[ConstantCheckRecord] = []

    def add(check, alpha, mu, p, lhs, rhs, passed, beta=None, n=None):
        records.append(
            ConstantCheckRecord(
                check=check, alpha=alpha, mu=mu, p=p, lhs=lhs, rhs=rhs,
                passed=passed, beta=beta, n=n,
            )
        )

    # trigonometric-bound constant: monotonicity, limit, uniform bounds
    for alpha in (a for a in alphas if a >= 0.0):
        for mu in mus:
            for p in ps:
                at_one = bari_constant(alpha, mu, p, 1)
                limit = bari_constant_limit(alpha, mu, p)
                approx = bari_constant(alpha, mu, p, LIMIT_N)
                add(
                    "c-limit", alpha, mu, p, approx, limit,
                    _rel_close(approx, limit, LIMIT_RTOL), n=LIMIT_N,
                )
                if max(alpha, mu) <= p:
                    add(
                        "c-uniform-bound", alpha, mu, p, at_one, _UNIFORM_BOUND,
                        at_one <= _UNIFORM_BOUND * (1.0 + INEQUALITY_SLACK), n=1,
                    )
                    if mu == 0.0:
                        add(
                            "c-uniform-bound-mu0", alpha, mu, p, at_one, 8.0 * math.pi,
                            at_one <= 8.0 * math.pi * (1.0 + INEQUALITY_SLACK), n=1,
                        )
                for n in ns:
                    value = bari_constant(alpha, mu, p, n)
                    add(
                        "c-monotone", alpha, mu, p, value, at_one,
                        value <= at_one * (1.0 + INEQUALITY_SLACK), n=n,
                    )

    # algebraic-bound constant: identity, monotonicity, limit, uniform bound
    for alpha in alphas:
        for beta in (b for b in betas if b <= alpha):
            for mu in mus:
                for p in ps:
                    at_one = nikolskii_constant(alpha, beta, mu, p, 1)
                    limit = nikolskii_constant_limit(alpha, beta, mu, p)
                    approx = nikolskii_constant(alpha, beta, mu, p, LIMIT_N)
                    add(
                        "b-limit", alpha, mu, p, approx, limit,
                        _rel_close(approx, limit, LIMIT_RTOL), beta=beta, n=LIMIT_N,
                    )
                    if max(2.0 * alpha + 1.0, mu) <= p:
                        cap = 2.0 ** (p + alpha - beta) * _UNIFORM_BOUND**p
                        add(
                            "b-uniform-bound", alpha, mu, p, at_one, cap,
                            at_one <= cap * (1.0 + INEQUALITY_SLACK), beta=beta, n=1,
                        )
                    for n in ns:
                        value = nikolskii_constant(alpha, beta, mu, p, n)
                        add(
                            "b-monotone", alpha, mu, p, value, at_one,
                            value <= at_one * (1.0 + INEQUALITY_SLACK), beta=beta, n=n,
                        )
                        via_c = (
                            2.0 ** (1.0 + (alpha - beta) / p)
                            * bari_constant(2.0 * alpha + 1.0, mu, p, n)
                        ) ** p
                        add(
                            "b-c-identity", alpha, mu, p, value, via_c,
                            _rel_close(value, via_c, IDENTITY_RTOL), beta=beta, n=n,
                        )

    # equality edge cases of the uniform bounds
    c_edge = bari_constant(1.0, 0.0, 1.0, 1)
    add("c-equality-edge", 1.0, 0.0, 1.0, c_edge, 8.0 * math.pi,
        _rel_close(c_edge, 8.0 * math.pi, IDENTITY_RTOL), n=1)
    b_edge = nikolskii_constant(0.0, 0.0, 1.0, 1.0, 1)
    b_edge_target = 16.0 * math.pi**2 / (math.pi - 1.0)
    add("b-equality-edge", 0.0, 1.0, 1.0, b_edge, b_edge_target,
        _rel_close(b_edge, b_edge_target, IDENTITY_RTOL), beta=0.0, n=1)

    return ConstantsReport(tuple(records))


# --- extremal search and the sharpness probe ----------------------------------


def _structured_starts(n: int) -> list[np.ndarray]:
    """Leading basis vector, a peak at +1, and a cosine-spike coefficient
    profile; all known to produce large norm ratios."""
    leading = np.zeros(n + 1)
    leading[n] = 1.0
    peak_mono = np.array([math.comb(n, k) / 2.0**n for k in range(n + 1)])
    peak = np.polynomial.chebyshev.poly2cheb(peak_mono)
    spike = np.ones(n + 1)
    return [leading, peak, spike]


def extremal_ratio_search(
    n: int,
    params: NikolskiiParams,
    restarts: int = 4,
    budget: int = 6000,
    master_seed: int = 0,
) -> tuple[AlgebraicPoly, float]:
    """Maximize the norm ratio over degree-n coefficient vectors.

    The objective lp_norm(P, q) / lp_norm(P, p) is scale-invariant, so
    vectors are normalized to the unit sphere.  Derivative-free simplex
    descent runs from three structured starts plus seeded random ones,
    splitting the evaluation budget evenly; the best polynomial found and
    its ratio are returned.  Deterministic given (seeds, budget).
    """
    if params.n != n:
        raise ValueError(f"params.n = {params.n} must equal the search degree {n}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    weight = params.weight
    acc_p = suite_accuracy(params.p)
    acc_q = None if math.isinf(params.q) else suite_accuracy(params.q)

    def ratio_of(coeffs: np.ndarray) -> float:
        scale = float(np.linalg.norm(coeffs))
        if scale == 0.0 or not np.all(np.isfinite(coeffs)):
            return 0.0
        P = AlgebraicPoly(tuple(coeffs / scale))
        if math.isinf(params.q):
            numerator = uniform_norm(P)
        else:
            numerator = lp_norm(P, params.q, weight, acc_q)
        denominator = lp_norm(P, params.p, weight, acc_p)
        if denominator == 0.0:
            return 0.0
        return numerator / denominator

    starts = _structured_starts(n)
    for r in range(restarts):
        rng = np.random.Generator(np.random.PCG64(derive_seed(master_seed, r)))
        vec = rng.standard_normal(n + 1)
        starts.append(vec / np.linalg.norm(vec))

    per_start = max(50, budget // len(starts))
    best_ratio = -math.inf
    best_coeffs = starts[0]
    for c0 in starts:
        r0 = ratio_of(c0)
        if r0 > best_ratio:
            best_ratio, best_coeffs = r0, np.asarray(c0, dtype=float)
        result = minimize(
            lambda c: -ratio_of(c),
            c0,
            method="Nelder-Mead",
            options={
                "maxfev": per_start,
                "xatol": 1e-9,
                "fatol": 1e-11,
                "adaptive": n >= 8,
            },
        )
        if -result.fun > best_ratio:
            best_ratio, best_coeffs = -result.fun, result.x
    unit = best_coeffs / np.linalg.norm(best_coeffs)
    return AlgebraicPoly(tuple(unit)), float(best_ratio)


@dataclass(frozen=True)
class SharpnessFit:
    """Log-log fit of best norm ratios against the degree."""

    alpha: float
    beta: float
    mu: float
    p: float
    q: float
    degrees: tuple[int, ...]
    best_ratios: tuple[float, ...]
    fitted_exponent: float
    theory_exponent: float
    r_squared: float


def sharpness_fit(
    degrees: Sequence[int], best_ratios: Sequence[float], params: NikolskiiParams
) -> SharpnessFit:
    """Least-squares slope of log(best ratio) against log(degree)."""
    if len(degrees) < 3:
        raise ValueError("need at least 3 degrees")
    if len(degrees) != len(best_ratios):
        raise ValueError("degrees and ratios must have equal length")
    if any(d2 <= d1 for d1, d2 in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")
    if any(r <= 0.0 for r in best_ratios):
        raise ValueError("best ratios must all be positive")
    x = np.log(np.asarray(degrees, dtype=float))
    y = np.log(np.asarray(best_ratios, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return SharpnessFit(
        alpha=params.alpha,
        beta=params.beta,
        mu=params.mu,
        p=params.p,
        q=params.q,
        degrees=tuple(int(d) for d in degrees),
        best_ratios=tuple(float(r) for r in best_ratios),
        fitted_exponent=float(slope),
        theory_exponent=params.degree_exponent * params.metric_gap,
        r_squared=float(r_squared),
    )


def sharpness_series(
    params: NikolskiiParams,
    degrees: Sequence[int],
    restarts: int = 4,
    budget: int = 6000,
    master_seed: int = 0,
) -> SharpnessFit:
    """Extremal search at each degree followed by the log-log fit."""
    ratios = []
    for n in degrees:
        _, ratio = extremal_ratio_search(
            n, replace(params, n=int(n)), restarts, budget, derive_seed(master_seed, n)
        )
        ratios.append(ratio)
    return sharpness_fit(list(degrees), ratios, params)
