"""Geometry of the normalized integration domains.

The supported domains all have Lebesgue volume one: the open unit cube
``(0,1)^d`` and the rescaled ``lp`` balls.  This module provides exact
log-domain volume and radius formulas, the large-``d`` limit of the
radius-to-sqrt(d) ratio, the critical exponent ``p*`` separating the
small-radius balls from the large ones, and uniform samplers for both
domain kinds.

Everything Gamma-valued is computed through ``gammaln`` so that results
stay finite far beyond ``d = 170``; linear values are exponentiated on
return and the ``*_log`` variants expose the raw logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

__all__ = [
    "DomainSpec",
    "NormalizedRadius",
    "lp_unit_ball_volume",
    "lp_unit_ball_volume_log",
    "lp_normalized_radius",
    "radius_limit_ratio",
    "solve_p_star",
    "p_star_lhs",
    "ball_volume_bounds",
    "ball_volume_bounds_log",
    "euclidean_ball_volume_log",
    "SMALL_RADIUS_THRESHOLD",
]

#: Ratio threshold below which hull neighborhoods shrink exponentially:
#: sqrt(2 / (pi * e)) ~ 0.4839.
SMALL_RADIUS_THRESHOLD = math.sqrt(2.0 / (math.pi * math.e))


def _check_p(p: float) -> float:
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    return p


def _check_d(d: int) -> int:
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d}")
    return int(d)


def lp_unit_ball_volume_log(p: float, d: int) -> float:
    """ln of the volume of the unit ball of the lp norm in dimension d."""
    p = _check_p(p)
    d = _check_d(d)
    if math.isinf(p):
        return d * math.log(2.0)
    return d * math.log(2.0) + d * gammaln(1.0 + 1.0 / p) - gammaln(1.0 + d / p)


def lp_unit_ball_volume(p: float, d: int) -> float:
    """Volume of the unit lp ball; 2^d Gamma(1+1/p)^d / Gamma(1+d/p)."""
    return math.exp(lp_unit_ball_volume_log(p, d))


@dataclass(frozen=True)
class NormalizedRadius:
    """Euclidean radius of the volume-one lp ball, with its sqrt(d) ratio."""

    p: float
    d: int
    value: float
    ratio: float

    @property
    def log_value(self) -> float:
        return math.log(self.value)


def _lp_scale_log(p: float, d: int) -> float:
    """ln of the lp-norm scaling factor that makes the lp ball volume one."""
    if math.isinf(p):
        return -math.log(2.0)
    return (gammaln(1.0 + d / p) / d) - math.log(2.0) - gammaln(1.0 + 1.0 / p)


def lp_normalized_radius(p: float, d: int) -> NormalizedRadius:
    """Euclidean radius of the lp ball rescaled to volume one.

    The scaling factor in the lp norm is Gamma(1+d/p)^(1/d) / (2 Gamma(1+1/p));
    the farthest point of the scaled ball from the origin lies a factor
    d^{max(0, 1/2 - 1/p)} further away in the Euclidean norm.
    """
    p = _check_p(p)
    d = _check_d(d)
    if math.isinf(p):
        value = math.sqrt(d) / 2.0
    else:
        log_value = _lp_scale_log(p, d) + max(0.0, 0.5 - 1.0 / p) * math.log(d)
        value = math.exp(log_value)
    return NormalizedRadius(p=p, d=d, value=value, ratio=value / math.sqrt(d))


def radius_limit_ratio(p: float) -> float:
    """Limit of radius/sqrt(d) for the volume-one lp balls as d grows.

    Infinite for p in [1,2); 1/(2 (p e)^{1/p} Gamma(1+1/p)) for p in [2,inf);
    1/2 for p = inf.
    """
    p = _check_p(p)
    if math.isinf(p):
        return 0.5
    if p < 2.0:
        return math.inf
    return 1.0 / (2.0 * (p * math.e) ** (1.0 / p) * math.exp(gammaln(1.0 + 1.0 / p)))


def p_star_lhs(p: float) -> float:
    """2 (p e)^{1/p} Gamma(1+1/p), the reciprocal of twice the limit ratio."""
    p = _check_p(p)
    if math.isinf(p):
        return 2.0
    return 2.0 * (p * math.e) ** (1.0 / p) * math.exp(gammaln(1.0 + 1.0 / p))


def solve_p_star(tol: float) -> float:
    """Critical exponent where the limit radius ratio crosses the decay threshold.

    Solves 2 (p e)^{1/p} Gamma(1+1/p) = sqrt(pi e / 2) on (2, 1e6) by
    bisection down to a bracket of width one followed by Brent refinement;
    the residual of the returned root is below ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    target = math.sqrt(math.pi * math.e / 2.0)

    def residual(p: float) -> float:
        return p_star_lhs(p) - target

    lo, hi = 2.0, 1e6
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo * f_hi >= 0.0:
        raise RuntimeError("bracketing interval [2, 1e6] does not change sign")
    # Bisection to width one keeps Brent away from the flat far tail.
    while hi - lo > 1.0:
        mid = 0.5 * (lo + hi)
        f_mid = residual(mid)
        if f_lo * f_mid <= 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    root = brentq(residual, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    if abs(residual(root)) >= tol:
        raise RuntimeError(f"root residual {residual(root):.3e} exceeds tol {tol:.3e}")
    return float(root)


def euclidean_ball_volume_log(d: int, radius: float) -> float:
    """ln of the volume of the d-dimensional Euclidean ball of given radius."""
    d = _check_d(d)
    if radius < 0.0:
        raise ValueError("radius must be non-negative")
    if radius == 0.0:
        return -math.inf
    return 0.5 * d * math.log(math.pi) + d * math.log(radius) - gammaln(1.0 + d / 2.0)


def ball_volume_bounds_log(d: int, delta: float) -> tuple[float, float, float]:
    """ln of (exact, crude, refined) for the ball of radius delta*sqrt(d).

    ``crude = (delta sqrt(2 pi e))^d`` and
    ``refined = (3 delta sqrt(2 e pi))^d / sqrt(pi d)``; the exact volume
    is strictly below both bounds for every admissible input.
    """
    d = _check_d(d)
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    exact = euclidean_ball_volume_log(d, delta * math.sqrt(d))
    crude = d * math.log(delta * math.sqrt(2.0 * math.pi * math.e))
    refined = d * math.log(3.0 * delta * math.sqrt(2.0 * math.e * math.pi)) - 0.5 * math.log(
        math.pi * d
    )
    return exact, crude, refined


def _exp_clamped(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def ball_volume_bounds(d: int, delta: float) -> tuple[float, float, float]:
    """Linear-domain version of :func:`ball_volume_bounds_log` (inf on overflow)."""
    exact, crude, refined = ball_volume_bounds_log(d, delta)
    return _exp_clamped(exact), _exp_clamped(crude), _exp_clamped(refined)


@dataclass(frozen=True)
class DomainSpec:
    """A volume-one integration domain: open unit cube or rescaled lp ball.

    ``radius`` is the Euclidean radius (distance from the center to the
    farthest point of the domain); ``radius_ratio`` divides it by sqrt(d).
    ``p`` is only meaningful for the ball kind and may be ``math.inf``,
    which is handled by explicit branches rather than inf arithmetic.
    """

    kind: str  # "cube" | "lp_ball"
    d: int
    p: float | None = None
    center: np.ndarray = field(repr=False, default=None)
    radius: float = 0.0
    volume: float = 1.0

    @staticmethod
    def cube(d: int) -> "DomainSpec":
        d = _check_d(d)
        return DomainSpec(
            kind="cube",
            d=d,
            p=None,
            center=np.full(d, 0.5),
            radius=math.sqrt(d) / 2.0,
        )

    @staticmethod
    def lp_ball(p: float, d: int) -> "DomainSpec":
        p = _check_p(p)
        d = _check_d(d)
        rad = lp_normalized_radius(p, d)
        return DomainSpec(
            kind="lp_ball",
            d=d,
            p=p,
            center=np.zeros(d),
            radius=rad.value,
        )

    @property
    def radius_ratio(self) -> float:
        return self.radius / math.sqrt(self.d)

    @property
    def diameter(self) -> float:
        if self.kind == "cube":
            return math.sqrt(self.d)
        return 2.0 * self.radius

    def lp_scale(self) -> float:
        """Scaling factor of the volume-one ball in its own lp norm."""
        if self.kind != "lp_ball":
            raise ValueError("lp_scale is defined for lp_ball domains only")
        if math.isinf(self.p):
            return 0.5
        return math.exp(_lp_scale_log(self.p, self.d))

    def contains(self, x: np.ndarray, slack: float = 1e-12) -> np.ndarray:
        """Boolean mask of rows of ``x`` lying in the (closed) domain."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if x.shape[1] != self.d:
            raise ValueError(f"points have dimension {x.shape[1]}, expected {self.d}")
        if self.kind == "cube":
            return np.all((x >= -slack) & (x <= 1.0 + slack), axis=1)
        scale = self.lp_scale()
        if math.isinf(self.p):
            return np.all(np.abs(x) <= scale + slack, axis=1)
        norms = np.sum(np.abs(x) ** self.p, axis=1) ** (1.0 / self.p)
        return norms <= scale + slack

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw ``n`` points uniformly from the domain.

        The cube uses i.i.d. uniforms.  The lp ball uses the radial
        construction: coordinates with density proportional to
        exp(-|t|^p) (signed Gamma(1/p) powers), normalized to the lp
        sphere, then scaled by U^{1/d} times the ball radius.  This is
        exact for every p and has no rejection cost in high dimension.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        if self.kind == "cube":
            return rng.random((n, self.d))
        scale = self.lp_scale()
        if math.isinf(self.p):
            return (rng.random((n, self.d)) - 0.5) * (2.0 * scale)
        if self.p == 2.0:
            g = rng.standard_normal((n, self.d))
            norms = np.linalg.norm(g, axis=1, keepdims=True)
        else:
            g = rng.gamma(1.0 / self.p, size=(n, self.d)) ** (1.0 / self.p)
            g *= rng.choice([-1.0, 1.0], size=(n, self.d))
            norms = np.sum(np.abs(g) ** self.p, axis=1, keepdims=True) ** (1.0 / self.p)
        radii = scale * rng.random((n, 1)) ** (1.0 / self.d)
        return g * (radii / norms)
