"""Hull-neighborhood volume: analytic bounds and Monte Carlo estimates.

Two closed-form bounds are provided for the volume of the
``delta*sqrt(d)``-neighborhood of the convex hull of ``n`` points:

* the small-radius bound ``n ((R_d + 2 delta) sqrt(pi e / 2))^d`` valid
  for any volume-one domain with radius ratio ``R_d``, and
* the cube bound ``n (d+1) gamma~(delta)^d`` valid for ``delta < 1/12``,
  where ``gamma~(delta)`` comes from a one-dimensional minimization of a
  Chernoff-type integral.

Monte Carlo estimators check these bounds empirically.  They draw from
counter-based substreams in fixed chunks, so results are bit-identical
for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import erf, erfc, erfi, log_ndtr

from .geometry import DomainSpec
from .hull import PointSet, within_distance
from .rng import chunk_sizes, substream

__all__ = [
    "GammaConstant",
    "VolumeEstimate",
    "profile_integral",
    "gamma_constant",
    "gamma_tilde_cube",
    "small_radius_hull_bound",
    "cube_hull_bound",
    "mc_hull_neighborhood_volume",
    "ball_tail_mass",
    "binomial_half_width",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _log_erfc(t: float) -> float:
    """ln erfc(t), stable for large positive t."""
    return math.log(2.0) + float(log_ndtr(-t * math.sqrt(2.0)))


def profile_integral(alpha: float, delta: float, eta: float) -> float:
    """The Chernoff integral I(alpha) behind the cube slice bound.

    I(alpha) = int_0^1 exp{alpha (delta^2 - (1/2+eta)^2 + 2x(1/2+eta) - x^2)} dx.

    Evaluated through the error function after completing the square;
    for very large ``alpha (1/2+eta)^2`` an adaptive quadrature on the
    max-scaled integrand takes over.  Negative ``alpha`` is supported
    (via erfi) so derivatives at zero can be taken centrally.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if eta < 0.0:
        raise ValueError("eta must be non-negative")
    alpha = float(alpha)
    if alpha == 0.0:
        return 1.0
    c = 0.5 + eta
    if alpha > 0.0 and alpha * c * c > 700.0:
        return _profile_integral_quad(alpha, delta, c)
    if alpha > 0.0:
        sa = math.sqrt(alpha)
        if c <= 1.0:
            s = float(erf((1.0 - c) * sa) + erf(c * sa))
            log_s = math.log(s)
        else:
            # Both erf arguments saturate at 1: difference of erfc terms.
            la = _log_erfc((c - 1.0) * sa)
            lb = _log_erfc(c * sa)
            log_s = la + math.log1p(-math.exp(lb - la))
        log_i = (
            alpha * delta * delta
            + 0.5 * math.log(math.pi)
            - math.log(2.0)
            - 0.5 * math.log(alpha)
            + log_s
        )
        return math.exp(log_i)
    beta = -alpha
    sb = math.sqrt(beta)
    s = float(erfi((1.0 - c) * sb) + erfi(c * sb))
    return math.exp(alpha * delta * delta) * 0.5 * math.sqrt(math.pi / beta) * s


def _profile_integral_quad(alpha: float, delta: float, c: float) -> float:
    """Adaptive quadrature fallback, scaled by the peak of the exponent."""
    x_peak = min(max(c, 0.0), 1.0)
    peak = alpha * (delta * delta - (x_peak - c) ** 2)

    def scaled(x: float) -> float:
        return math.exp(alpha * (delta * delta - (x - c) ** 2) - peak)

    val, _ = quad(scaled, 0.0, 1.0, epsabs=1e-12, limit=200)
    if peak > 700.0:
        return math.inf
    return math.exp(peak) * val


@dataclass(frozen=True)
class GammaConstant:
    """Infimum over alpha of the Chernoff integral, with its minimizer.

    ``value`` is in (0, 1]; it dips below one exactly when the slope of
    I at alpha = 0, which equals delta^2 - eta^2 - 1/12, is negative.
    """

    delta: float
    eta: float
    value: float
    alpha_star: float
    slope_at_zero: float


def gamma_constant(delta: float, eta: float) -> GammaConstant:
    """Minimize I(alpha) over alpha >= 0 by golden section.

    When ``delta^2 >= eta^2 + 1/12`` the infimum is attained in the
    limit alpha -> 0 and equals one; otherwise the bracket is found by
    doubling and the section search runs down to width 1e-8.
    """
    slope = delta * delta - eta * eta - 1.0 / 12.0
    if slope >= -1e-14:  # boundary up to rounding: infimum is 1 at alpha -> 0
        return GammaConstant(delta, eta, 1.0, 0.0, slope)

    hi = 1.0
    f_hi = profile_integral(hi, delta, eta)
    while True:
        f_next = profile_integral(2.0 * hi, delta, eta)
        if f_next > f_hi or hi > 2.0**60:
            hi = 2.0 * hi
            break
        hi *= 2.0
        f_hi = f_next

    lo = 0.0
    a = hi - _GOLDEN * (hi - lo)
    b = lo + _GOLDEN * (hi - lo)
    f_a = profile_integral(a, delta, eta)
    f_b = profile_integral(b, delta, eta)
    while hi - lo > 1e-8:
        if f_a <= f_b:
            hi, b, f_b = b, a, f_a
            a = hi - _GOLDEN * (hi - lo)
            f_a = profile_integral(a, delta, eta)
        else:
            lo, a, f_a = a, b, f_b
            b = lo + _GOLDEN * (hi - lo)
            f_b = profile_integral(b, delta, eta)
    alpha_star = 0.5 * (lo + hi)
    value = min(profile_integral(alpha_star, delta, eta), f_a, f_b)
    return GammaConstant(delta, eta, value, alpha_star, slope)


@lru_cache(maxsize=128)
def gamma_tilde_cube(delta: float) -> GammaConstant:
    """Cube-specific constant: gamma(1/4 + delta, 1/4) for delta < 1/12."""
    if delta >= 1.0 / 12.0:
        raise ValueError("delta must be below 1/12 for the cube bound")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return gamma_constant(0.25 + delta, 0.25)


def small_radius_hull_bound(n: int, d: int, radius_ratio: float, delta: float) -> float:
    """ln of the neighborhood-volume bound n((R_d + 2 delta) sqrt(pi e/2))^d.

    Valid for the hull of n points in any volume-one domain whose radius
    is ``radius_ratio * sqrt(d)``.  Decreasing in d exactly when
    ``R_d + 2 delta < sqrt(2/(pi e))``.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if radius_ratio <= 0.0:
        raise ValueError("radius_ratio must be positive")
    if delta < 0.0:
        raise ValueError("delta must be non-negative")
    base = (radius_ratio + 2.0 * delta) * math.sqrt(math.pi * math.e / 2.0)
    return math.log(n) + d * math.log(base)


def cube_hull_bound(n: int, d: int, delta: float) -> float:
    """ln of the cube neighborhood-volume bound n (d+1) gamma~(delta)^d."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    gc = gamma_tilde_cube(delta)
    return math.log(n) + math.log(d + 1.0) + d * math.log(gc.value)


def binomial_half_width(successes: int, samples: int) -> float:
    """95% half-width for a binomial proportion.

    Normal approximation by default; the Wilson interval replaces it
    when fewer than 10 successes were seen, which is the regime the
    tiny hull-neighborhood volumes live in.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    z = 1.959963984540054
    p = successes / samples
    if successes < 10:
        z2 = z * z
        half = (
            z
            * math.sqrt(p * (1.0 - p) / samples + z2 / (4.0 * samples * samples))
            / (1.0 + z2 / samples)
        )
        return half
    return z * math.sqrt(p * (1.0 - p) / samples)


@dataclass(frozen=True)
class VolumeEstimate:
    """Monte Carlo volume estimate next to its analytic comparator."""

    mean: float
    half_width_95: float
    samples: int
    seed: int
    bound_log: float | None
    bound_source: str  # "small_radius" | "cube" | "none"

    @property
    def bound(self) -> float | None:
        return None if self.bound_log is None else math.exp(self.bound_log)

    @property
    def passed(self) -> bool:
        if self.bound_log is None:
            return True
        return self.mean <= math.exp(self.bound_log) + 3.0 * self.half_width_95

    def to_json_dict(self) -> dict:
        return {
            "mean": self.mean,
            "half_width_95": self.half_width_95,
            "samples": self.samples,
            "seed": self.seed,
            "bound_log": self.bound_log,
            "bound_source": self.bound_source,
            "pass": self.passed,
        }


def _count_chunks(worker, sizes: list[int], threads: int) -> list[int]:
    if threads <= 1:
        return [worker(i, s) for i, s in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, i, s) for i, s in enumerate(sizes)]
        return [f.result() for f in futures]


def mc_hull_neighborhood_volume(
    ps: PointSet,
    dom: DomainSpec,
    delta: float,
    n_samples: int,
    seed: int,
    threads: int = 1,
    tol: float = 1e-10,
) -> VolumeEstimate:
    """Estimate the volume of the hull neighborhood inside the domain.

    Draws ``n_samples`` uniform points and counts the fraction within
    Euclidean distance ``delta*sqrt(d)`` of the hull.  Chunks are keyed
    by ``(seed, chunk_index)`` and reduced in chunk order, so the result
    is identical for every ``threads`` value.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    if delta < 0.0:
        raise ValueError("delta must be non-negative")
    if dom.d != ps.d:
        raise ValueError("domain dimension does not match the point set")
    r = delta * math.sqrt(dom.d)
    sizes = chunk_sizes(n_samples)

    def worker(index: int, size: int) -> int:
        rng = substream(seed, index)
        pts = dom.sample(rng, size)
        return int(np.count_nonzero(within_distance(ps, pts, r, tol=tol)))

    counts = _count_chunks(worker, sizes, threads)
    hits = sum(counts)
    mean = hits / n_samples
    half = binomial_half_width(hits, n_samples)

    if dom.kind == "cube" and delta < 1.0 / 12.0 and delta > 0.0:
        bound_log = cube_hull_bound(ps.n, dom.d, delta)
        source = "cube"
    elif dom.kind == "lp_ball" or dom.kind == "cube":
        bound_log = small_radius_hull_bound(ps.n, dom.d, dom.radius_ratio, delta)
        source = "small_radius"
    else:
        bound_log, source = None, "none"
    return VolumeEstimate(
        mean=mean,
        half_width_95=half,
        samples=n_samples,
        seed=seed,
        bound_log=bound_log,
        bound_source=source,
    )


def ball_tail_mass(
    dom: DomainSpec,
    x_star: np.ndarray,
    big_r: float,
    n_samples: int,
    seed: int,
    threads: int = 1,
) -> VolumeEstimate:
    """Mass of the domain at Euclidean distance >= big_r * sqrt(d) from x_star."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    x_star = np.asarray(x_star, dtype=float).ravel()
    if x_star.shape[0] != dom.d:
        raise ValueError("x_star dimension mismatch")
    if not bool(dom.contains(x_star[None, :])[0]):
        raise ValueError("x_star must lie in the domain")
    threshold = big_r * math.sqrt(dom.d)
    sizes = chunk_sizes(n_samples)

    def worker(index: int, size: int) -> int:
        rng = substream(seed, index)
        pts = dom.sample(rng, size)
        dist = np.linalg.norm(pts - x_star, axis=1)
        return int(np.count_nonzero(dist >= threshold))

    counts = _count_chunks(worker, sizes, threads)
    hits = sum(counts)
    return VolumeEstimate(
        mean=hits / n_samples,
        half_width_95=binomial_half_width(hits, n_samples),
        samples=n_samples,
        seed=seed,
        bound_log=None,
        bound_source="none",
    )
