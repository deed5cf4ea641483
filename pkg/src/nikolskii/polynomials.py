"""Algebraic polynomials in the Chebyshev basis and trigonometric polynomials.

"Degree n" always means degree at most n: the leading coefficient may be
zero.  The Chebyshev basis keeps evaluation well conditioned up to the
degrees used here and makes the cosine composition free, since the basis
polynomial of index k turns into cos(k t).

Polynomials are immutable values; every operation below is a pure
function of its inputs.  Random instances come from a fixed, portable
generator (PCG64) so that a (degree, seed, kind) triple reproduces the
same coefficients everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from .quadrature import Accuracy, integrate_weighted_algebraic, integrate_weighted_trig
from .weights import TrigWeightParams, WeightParams

_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class AlgebraicPoly:
    """sum_k c_k T_k(x) on [-1, 1], with T_k the Chebyshev polynomials."""

    cheb_coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cheb_coeffs", tuple(float(c) for c in self.cheb_coeffs))
        if len(self.cheb_coeffs) == 0:
            raise ValueError("need at least one coefficient")
        if not all(math.isfinite(c) for c in self.cheb_coeffs):
            raise ValueError("coefficients must be finite")

    @cached_property
    def _coeff_array(self) -> np.ndarray:
        return np.asarray(self.cheb_coeffs, dtype=float)

    @property
    def degree_bound(self) -> int:
        return len(self.cheb_coeffs) - 1

    @property
    def exact_degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero polynomial)."""
        for k in range(len(self.cheb_coeffs) - 1, -1, -1):
            if self.cheb_coeffs[k] != 0.0:
                return k
        return 0

    def __call__(self, x):
        """Clenshaw evaluation; accepts scalars or arrays in [-1, 1]."""
        c = self.cheb_coeffs
        if isinstance(x, (float, int)):
            if not -1.0 - _DOMAIN_SLACK <= x <= 1.0 + _DOMAIN_SLACK:
                raise ValueError("argument outside [-1, 1]")
            x = min(max(float(x), -1.0), 1.0)
            b1 = b2 = 0.0
            two_x = 2.0 * x
            for k in range(len(c) - 1, 0, -1):
                b1, b2 = c[k] + two_x * b1 - b2, b1
            return c[0] + x * b1 - b2
        arr = np.asarray(x, dtype=float)
        if np.any(arr < -1.0 - _DOMAIN_SLACK) or np.any(arr > 1.0 + _DOMAIN_SLACK):
            raise ValueError("argument outside [-1, 1]")
        arr = np.clip(arr, -1.0, 1.0)
        ca = self._coeff_array
        b1 = np.zeros_like(arr)
        b2 = np.zeros_like(arr)
        two_x = 2.0 * arr
        for k in range(len(ca) - 1, 0, -1):
            b1, b2 = ca[k] + two_x * b1 - b2, b1
        result = ca[0] + arr * b1 - b2
        return float(result) if result.ndim == 0 else result

    def scaled(self, factor: float) -> "AlgebraicPoly":
        return AlgebraicPoly(tuple(factor * c for c in self.cheb_coeffs))


@dataclass(frozen=True)
class TrigPoly:
    """a0 + sum_k (a_k cos kt + b_k sin kt), 2 pi periodic."""

    a0: float
    cos_coeffs: tuple[float, ...]
    sin_coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", tuple(float(c) for c in self.sin_coeffs))
        if len(self.cos_coeffs) != len(self.sin_coeffs):
            raise ValueError("cosine and sine coefficient counts differ")
        values = (self.a0, *self.cos_coeffs, *self.sin_coeffs)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("coefficients must be finite")

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(self.cos_coeffs, dtype=float),
            np.asarray(self.sin_coeffs, dtype=float),
        )

    @cached_property
    def _horner_coeffs(self) -> tuple[complex, ...]:
        # a_k cos kt + b_k sin kt = Re((a_k - i b_k) e^{ikt})
        return tuple(a - 1j * b for a, b in zip(self.cos_coeffs, self.sin_coeffs))

    @property
    def degree_bound(self) -> int:
        return len(self.cos_coeffs)

    @property
    def exact_degree(self) -> int:
        for k in range(len(self.cos_coeffs), 0, -1):
            if self.cos_coeffs[k - 1] != 0.0 or self.sin_coeffs[k - 1] != 0.0:
                return k
        return 0

    def __call__(self, t):
        n = len(self.cos_coeffs)
        if isinstance(t, (float, int)):
            if n == 0:
                return self.a0
            # complex Horner in z = e^{it}
            z = complex(math.cos(t), math.sin(t))
            acc = 0j
            for c in reversed(self._horner_coeffs):
                acc = (acc + c) * z
            return self.a0 + acc.real
        arr = np.asarray(t, dtype=float)
        if n == 0:
            result = np.full_like(arr, self.a0)
        else:
            # accumulate cos kt, sin kt by the angle-addition recurrence
            ac, bs = self._arrays
            cos_t = np.cos(arr)
            sin_t = np.sin(arr)
            result = self.a0 + ac[0] * cos_t + bs[0] * sin_t
            if n > 1:
                two_cos = 2.0 * cos_t
                ck_prev, ck = np.ones_like(arr), cos_t
                sk_prev, sk = np.zeros_like(arr), sin_t
                for k in range(1, n):
                    ck_prev, ck = ck, two_cos * ck - ck_prev
                    sk_prev, sk = sk, two_cos * sk - sk_prev
                    result += ac[k] * ck + bs[k] * sk
        return float(result) if result.ndim == 0 else result

    def derivative(self) -> "TrigPoly":
        """Exact coefficient-level derivative: cos kt -> -k sin kt, sin kt -> k cos kt."""
        n = self.degree_bound
        k = np.arange(1.0, n + 1.0)
        ac, bs = self._arrays
        return TrigPoly(0.0, tuple(k * bs), tuple(-k * ac))

    def scaled(self, factor: float) -> "TrigPoly":
        return TrigPoly(
            factor * self.a0,
            tuple(factor * c for c in self.cos_coeffs),
            tuple(factor * c for c in self.sin_coeffs),
        )


Poly = Union[AlgebraicPoly, TrigPoly]


def trig_derivative(T: TrigPoly) -> TrigPoly:
    return T.derivative()


def compose_with_cosine(P: AlgebraicPoly) -> TrigPoly:
    """The trigonometric polynomial t -> P(cos t).

    Chebyshev coefficients map directly onto cosine coefficients because
    the basis polynomial of index k evaluates to cos kt at x = cos t.
    """
    c = P.cheb_coeffs
    n = P.degree_bound
    return TrigPoly(c[0], tuple(c[1:]), (0.0,) * n)


# --- uniform norm ------------------------------------------------------------

_MIN_GRID = 257
_GRID_PER_DEGREE = 32
# Second-order Bernstein bound: a true local maximum can exceed its nearest
# sample by at most ~ max|f''| (h/2)^2 / 2 <= (pi^2/2048) max|f|; candidates
# below the cut cannot reach the global maximum after refinement.
_REFINE_CUT = 0.99
_REFINE_MAX_STEPS = 60


def _refine_maximum(f, xa, xb, xc, ya, yb, yc, lo, hi) -> float:
    """Sharpen one bracketed local maximum of f by guarded successive
    parabolic interpolation (bisection fallback); returns the best value."""
    best = max(ya, yb, yc)
    stale = 0
    for _ in range(_REFINE_MAX_STEPS):
        d1 = xb - xa
        d2 = xb - xc
        num = d1 * d1 * (yb - yc) - d2 * d2 * (yb - ya)
        den = d1 * (yb - yc) - d2 * (yb - ya)
        if den != 0.0:
            cand = xb - 0.5 * num / den
        else:
            cand = math.nan
        span = xc - xa
        if not (xa + 1e-14 * span < cand < xc - 1e-14 * span) or cand == xb:
            # parabola degenerate or outside: bisect the wider side
            cand = 0.5 * (xa + xb) if (xb - xa) > (xc - xb) else 0.5 * (xb + xc)
        cand = min(max(cand, lo), hi)
        yv = f(cand)
        if yv > best:
            stale = 0
            best = yv
        else:
            stale += 1
        # keep a bracket around the running maximum
        if cand < xb:
            if yv >= yb:
                xa, xb, xc = xa, cand, xb
                ya, yb, yc = ya, yv, yb
            else:
                xa, ya = cand, yv
        else:
            if yv >= yb:
                xa, xb, xc = xb, cand, xc
                ya, yb, yc = yb, yv, yc
            else:
                xc, yc = cand, yv
        if xc - xa <= 1e-13 * max(1.0, abs(xb)) or stale >= 3:
            break
    return best


def uniform_norm(poly: Poly) -> float:
    """max |poly| over its domain ([-1, 1] or [-pi, pi]).

    Dense sampling (Chebyshev-spaced for algebraic polynomials, uniform
    for trigonometric ones) locates the candidate maxima; local parabolic
    refinement then sharpens every candidate that could still beat the
    grid maximum.  Relative accuracy is far below 1e-9 for the degrees
    in scope.
    """
    n = poly.degree_bound
    if isinstance(poly, TrigPoly):
        lo, hi = -math.pi, math.pi
        if n == 0:
            return abs(poly.a0)
    else:
        lo, hi = -1.0, 1.0
        if n == 0:
            return abs(poly.cheb_coeffs[0])
    size = max(_MIN_GRID, _GRID_PER_DEGREE * n + 1)
    if isinstance(poly, TrigPoly):
        grid = np.linspace(lo, hi, size)
    else:
        grid = np.cos(np.linspace(math.pi, 0.0, size))
        grid[0], grid[-1] = -1.0, 1.0
    y = np.abs(poly(grid))
    y_max = float(y.max())
    if y_max == 0.0:
        return 0.0
    spread = y_max - float(y.min())
    if spread <= 1e-14 * y_max:
        return y_max

    def f(x: float) -> float:
        return abs(poly(x))

    interior = np.nonzero((y[1:-1] >= y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    candidates = [int(i) for i in interior]
    if y[0] >= y[1]:
        candidates.append(0)
    if y[-1] >= y[-2]:
        candidates.append(size - 1)

    cut = _REFINE_CUT * y_max
    best = y_max
    for i in candidates:
        if y[i] < cut:
            continue
        j = min(max(i, 1), size - 2)
        best = max(
            best,
            _refine_maximum(
                f, grid[j - 1], grid[j], grid[j + 1], y[j - 1], y[j], y[j + 1], lo, hi
            ),
        )
    return best


def lp_norm(
    poly: Poly,
    p: float,
    weight: WeightParams | TrigWeightParams,
    acc: Accuracy | None = None,
) -> float:
    """Weighted L_p norm; p = math.inf returns the uniform norm.

    For continuous functions the essential supremum equals the maximum,
    so the weight plays no role in the p = inf case.
    """
    if math.isinf(p):
        return uniform_norm(poly)
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    # integrate at unit coefficient scale so the convergence test is purely
    # relative; this keeps the norm exactly homogeneous in the coefficients
    if isinstance(poly, TrigPoly):
        if not isinstance(weight, TrigWeightParams):
            raise TypeError("trigonometric polynomials need a trigonometric weight")
        scale = max(abs(poly.a0), *map(abs, poly.cos_coeffs), *map(abs, poly.sin_coeffs)) \
            if poly.degree_bound else abs(poly.a0)
        if scale == 0.0:
            return 0.0
        unit = poly.scaled(1.0 / scale)
        integral = integrate_weighted_trig(lambda t: np.abs(unit(t)) ** p, weight, acc)
    else:
        if not isinstance(weight, WeightParams):
            raise TypeError("algebraic polynomials need an algebraic weight")
        scale = max(map(abs, poly.cheb_coeffs))
        if scale == 0.0:
            return 0.0
        unit = poly.scaled(1.0 / scale)
        integral = integrate_weighted_algebraic(lambda x: np.abs(unit(x)) ** p, weight, acc)
    return scale * max(integral, 0.0) ** (1.0 / p)


# --- random instances and the exchange format -------------------------------


def random_poly(n: int, seed: int, kind: str) -> Poly:
    """Standard-normal random coefficients from PCG64(seed).

    The draw order is fixed: algebraic polynomials take the n+1 Chebyshev
    coefficients in one vector; trigonometric ones take a single vector
    [a0, a_1..a_n, b_1..b_n].  Identical (n, seed, kind) always yields
    identical coefficients.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if kind == "algebraic":
        return AlgebraicPoly(tuple(rng.standard_normal(n + 1)))
    if kind == "trig":
        draw = rng.standard_normal(2 * n + 1)
        return TrigPoly(float(draw[0]), tuple(draw[1 : n + 1]), tuple(draw[n + 1 :]))
    raise ValueError(f"kind must be 'algebraic' or 'trig', got {kind!r}")


def poly_to_dict(poly: Poly) -> dict:
    """Exchange record {kind, n, coefficients}.

    Algebraic coefficients are listed c_0..c_n; trigonometric ones are
    flattened as [a0, a_1..a_n, b_1..b_n].
    """
    if isinstance(poly, AlgebraicPoly):
        return {
            "kind": "algebraic",
            "n": poly.degree_bound,
            "coefficients": list(poly.cheb_coeffs),
        }
    return {
        "kind": "trig",
        "n": poly.degree_bound,
        "coefficients": [poly.a0, *poly.cos_coeffs, *poly.sin_coeffs],
    }


def poly_from_dict(record: dict) -> Poly:
    kind = record["kind"]
    n = int(record["n"])
    coeffs = [float(c) for c in record["coefficients"]]
    if kind == "algebraic":
        if len(coeffs) != n + 1:
            raise ValueError(f"expected {n + 1} coefficients, got {len(coeffs)}")
        return AlgebraicPoly(tuple(coeffs))
    if kind == "trig":
        if len(coeffs) != 2 * n + 1:
            raise ValueError(f"expected {2 * n + 1} coefficients, got {len(coeffs)}")
        return TrigPoly(coeffs[0], tuple(coeffs[1 : n + 1]), tuple(coeffs[n + 1 :]))
    raise ValueError(f"unknown polynomial kind {kind!r}")


def save_poly(poly: Poly, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poly_to_dict(poly), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_poly(path: str) -> Poly:
    with open(path, "r", encoding="utf-8") as fh:
        return poly_from_dict(json.load(fh))
