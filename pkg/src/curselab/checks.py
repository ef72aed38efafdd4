"""Statistical verification suites for the fooling and quadrature claims.

Each suite draws seeded samples, measures the quantity a construction
certifies (Lipschitz quotients, exact zero/one regions, convolution
behavior, quadrature error against its bound) and reports measured
values, the certified bounds, and pass flags.  The CLI exposes them as
subcommands and the acceptance tests call them directly.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import ub_one_point_c0, ub_taylor
from .fooling import (
    fooling_c0,
    fooling_c1,
    fooling_c1_eval,
    make_alpha_sequence,
    smoothed_eval,
)
from .geometry import DomainSpec
from .hull import PointSet, project_onto_hull
from .quadrature import (
    Integrand,
    make_sine_integrand,
    quad_one_point,
    quad_taylor,
    reference_integral,
)
from .rng import substream

__all__ = [
    "random_point_set",
    "fool_check_c0",
    "fool_check_c1",
    "smooth_check",
    "quad_check_sine",
    "one_point_check_c0",
]

#: Substream index reserved for drawing hull points, far from the
#: low indices used by Monte Carlo chunk loops.
POINTS_STREAM = 1 << 32


def random_point_set(dom: DomainSpec, n: int, seed: int) -> PointSet:
    """n domain points drawn from the dedicated substream of ``seed``."""
    rng = substream(seed, POINTS_STREAM)
    return PointSet(dom.sample(rng, n), domain=dom)


def _sample_hull_neighborhood(
    rng: np.random.Generator, ps: PointSet, radius: float, count: int
) -> np.ndarray:
    """Points of the hull neighborhood: convex combos plus interior shifts."""
    w = rng.dirichlet(np.ones(ps.n), size=count)
    base = w @ ps.points
    direction = rng.standard_normal((count, ps.d))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    # Stay strictly interior so solver tolerance cannot flip the sign.
    radii = 0.99 * radius * rng.random((count, 1)) ** (1.0 / ps.d)
    return base + direction * radii


def _certified_far_points(
    rng: np.random.Generator,
    ps: PointSet,
    dom: DomainSpec,
    threshold: float,
    count: int,
    margin: float = 1e-6,
) -> np.ndarray:
    """Domain points whose hull distance certifiably exceeds ``threshold``."""
    out = []
    attempts = 0
    while len(out) < count and attempts < 200:
        attempts += 1
        cand = dom.sample(rng, max(64, count))
        for x in cand:
            if project_onto_hull(x, ps).distance > threshold * (1.0 + margin):
                out.append(x)
                if len(out) == count:
                    break
    if len(out) < count:
        raise RuntimeError("could not find enough points far from the hull")
    return np.asarray(out)


def fool_check_c0(
    d: int, n: int, lipschitz: float, pairs: int, seed: int
) -> dict:
    """Sampled Lipschitz quotients and range of the c0 construction."""
    dom = DomainSpec.cube(d)
    ps = random_point_set(dom, n, seed)
    f = fooling_c0(ps, lipschitz)
    rng = substream(seed, 1)
    x = dom.sample(rng, pairs)
    y = dom.sample(rng, pairs)
    fx = f(x)
    fy = f(y)
    gaps = np.linalg.norm(x - y, axis=1)
    quotients = np.abs(fx - fy) / np.maximum(gaps, 1e-300)
    max_q = float(quotients.max())
    in_range = bool(np.all((fx >= 0.0) & (fx <= 1.0) & (fy >= 0.0) & (fy <= 1.0)))
    bound = f.certificate.value(0, d)
    return {
        "variant": "c0",
        "certificate": f.certificate_json(),
        "max_lipschitz_quotient": max_q,
        "lipschitz_bound": bound,
        "lipschitz_pass": max_q <= bound * (1.0 + 1e-8),
        "range_pass": in_range,
        "pass": max_q <= bound * (1.0 + 1e-8) and in_range,
    }


def fool_check_c1(
    d: int,
    n: int,
    delta: float,
    pairs: int,
    seed: int,
    zero_points: int = 1000,
    one_points: int = 1000,
    grad_points: int = 40,
) -> dict:
    """The full C^1 construction suite.

    Checks, at the given dimension: sampled Lipschitz quotient against
    2/(delta sqrt(d)); sampled gradient-Lipschitz quotient against
    40/(delta^2 d); exact zero on sampled neighborhood points; exact one
    on points certified beyond the double neighborhood; and agreement of
    the analytic gradient with central differences away from the ramp
    breakpoints (relative error at most 1e-5 at step 1e-5 sqrt(d)).
    """
    dom = DomainSpec.cube(d)
    ps = random_point_set(dom, n, seed)
    f = fooling_c1(ps, delta)
    l0 = f.certificate.value(0, d)
    l1 = f.certificate.value(1, d)
    r = delta * math.sqrt(d)

    rng = substream(seed, 1)
    x = dom.sample(rng, pairs)
    y = dom.sample(rng, pairs)
    # Uniform pairs rarely meet the ramp in high dimension, so a quarter
    # of the pairs straddle it: both points near the hull, a fraction of
    # the ramp width apart.  That is where the quotients approach the
    # certified constants.
    extra = max(1, pairs // 4)
    w = rng.dirichlet(np.ones(ps.n), size=extra)
    base = w @ ps.points
    u = rng.standard_normal((extra, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    x_ramp = base + u * (r * rng.uniform(0.5, 3.5, size=(extra, 1)))
    step = rng.standard_normal((extra, d))
    step /= np.linalg.norm(step, axis=1, keepdims=True)
    y_ramp = x_ramp + step * (r * rng.uniform(0.05, 1.0, size=(extra, 1)))
    x = np.vstack([x, x_ramp])
    y = np.vstack([y, y_ramp])

    total = pairs + extra
    vals_x = np.empty(total)
    vals_y = np.empty(total)
    grads_x = np.empty((total, d))
    grads_y = np.empty((total, d))
    for i in range(total):
        vals_x[i], grads_x[i] = fooling_c1_eval(ps, delta, x[i])
        vals_y[i], grads_y[i] = fooling_c1_eval(ps, delta, y[i])
    gaps = np.maximum(np.linalg.norm(x - y, axis=1), 1e-300)
    max_q = float((np.abs(vals_x - vals_y) / gaps).max())
    max_gq = float((np.linalg.norm(grads_x - grads_y, axis=1) / gaps).max())
    range_pass = bool(np.all((vals_x >= 0.0) & (vals_x <= 1.0)))

    rng_zero = substream(seed, 2)
    zeros = _sample_hull_neighborhood(rng_zero, ps, r, zero_points)
    zero_vals = f(zeros)
    zeros_exact = int(np.count_nonzero(zero_vals == 0.0))

    rng_one = substream(seed, 3)
    fars = _certified_far_points(rng_one, ps, dom, 2.0 * r, one_points)
    one_vals = f(fars)
    ones_exact = int(np.count_nonzero(one_vals == 1.0))

    # Gradient versus central differences.  Test points sit mid-ramp: the
    # ramp profile is only piecewise smooth, and near its inner boundary
    # the hull-distance curvature (order 1/r) makes the truncation error
    # of the pinned step exceed the tolerance even for an exact gradient.
    rng_grad = substream(seed, 4)
    step = 1e-5 * math.sqrt(d)
    t1, t2 = (delta * delta * d / 4.0, delta * delta * d)
    checked = 0
    max_rel = 0.0
    attempts = 0
    while checked < grad_points and attempts < 50:
        attempts += 1
        # Anchor on the projection of a far point: every point of the
        # segment between a query and its hull projection projects to the
        # same point, so sliding along the ray sets the distance exactly.
        anchors = dom.sample(rng_grad, 4 * grad_points)
        targets = r * (1.0 + rng_grad.uniform(0.3, 0.7, size=4 * grad_points))
        for anchor, target in zip(anchors, targets):
            proj = project_onto_hull(anchor, ps)
            if proj.distance <= target:
                continue
            u = (anchor - proj.nearest) / proj.distance
            point = proj.nearest + target * u
            gap = project_onto_hull(point, ps).distance - r
            if not 0.25 * r <= gap <= 0.8 * r:
                continue
            phi = gap * gap
            if abs(phi - t1) < 1e-3 * t2 or abs(phi - t2) < 1e-3 * t2:
                continue
            _, grad = fooling_c1_eval(ps, delta, point)
            fd = np.empty(d)
            for axis in range(d):
                e = np.zeros(d)
                e[axis] = step
                fd[axis] = (
                    fooling_c1_eval(ps, delta, point + e)[0]
                    - fooling_c1_eval(ps, delta, point - e)[0]
                ) / (2.0 * step)
            rel = float(
                np.linalg.norm(fd - grad) / max(np.linalg.norm(grad), 1e-300)
            )
            max_rel = max(max_rel, rel)
            checked += 1
            if checked == grad_points:
                break

    results = {
        "variant": "c1",
        "certificate": f.certificate_json(),
        "max_lipschitz_quotient": max_q,
        "lipschitz_bound": l0,
        "lipschitz_pass": max_q <= l0 * (1.0 + 1e-8),
        "max_gradient_quotient": max_gq,
        "gradient_bound": l1,
        "gradient_pass": max_gq <= l1 * (1.0 + 1e-6),
        "zeros_exact": zeros_exact,
        "zeros_total": zero_points,
        "zeros_pass": zeros_exact == zero_points,
        "ones_exact": ones_exact,
        "ones_total": one_points,
        "ones_pass": ones_exact == one_points,
        "grad_fd_max_rel_err": max_rel,
        "grad_fd_points": checked,
        "grad_fd_pass": checked > 0 and max_rel <= 1e-5,
        "range_pass": range_pass,
    }
    results["pass"] = all(
        results[key]
        for key in (
            "lipschitz_pass",
            "gradient_pass",
            "zeros_pass",
            "ones_pass",
            "grad_fd_pass",
            "range_pass",
        )
    )
    return results


def smooth_check(
    d: int,
    n: int,
    delta: float,
    k: int,
    samples: int,
    seed: int,
    lip_pairs: int = 4,
) -> dict:
    """Convolution-smoothing suite with uniform weights and k kernels.

    Verifies the normalized-kernel hooks (a constant base reproduces the
    constant exactly, an affine base matches up to Monte Carlo error),
    the exact-zero and exact-one regions of the smoothed construction,
    and the Lipschitz quotient of smoothed means on common random
    numbers against the base Lipschitz constant.
    """
    dom = DomainSpec.cube(d)
    ps = random_point_set(dom, n, seed)
    f = fooling_c1(ps, delta)
    seq = make_alpha_sequence("uniform", k=k)
    r = delta * math.sqrt(d)
    lip = f.certificate.value(0, d)
    rng = substream(seed, 1)
    x0 = dom.sample(rng, 1)[0]

    const_value = 0.375
    mean_c, _ = smoothed_eval(
        lambda pts: np.full(len(np.atleast_2d(pts)), const_value),
        seq, k, delta, x0, samples, seed + 1,
    )
    const_pass = mean_c == const_value

    a_vec = rng.standard_normal(d)
    b_off = float(rng.random())
    mean_a, hw_a = smoothed_eval(
        lambda pts: np.atleast_2d(pts) @ a_vec + b_off,
        seq, k, delta, x0, samples, seed + 1,
    )
    target = float(a_vec @ x0 + b_off)
    affine_pass = abs(mean_a - target) <= 3.0 * hw_a

    w = rng.dirichlet(np.ones(ps.n), size=4)
    hull_pts = w @ ps.points
    zero_means = [
        smoothed_eval(f, seq, k, delta, point, samples, seed + 2)[0]
        for point in hull_pts
    ]
    zero_pass = all(m == 0.0 for m in zero_means)

    far = _certified_far_points(substream(seed, 3), ps, dom, 3.0 * r, 4)
    one_means = [
        smoothed_eval(f, seq, k, delta, point, samples, seed + 2)[0] for point in far
    ]
    one_pass = all(m == 1.0 for m in one_means)

    # Lipschitz of smoothed means: pairs straddling the ramp, common seed.
    max_quotient = 0.0
    max_allowance = 0.0
    lip_pass = True
    pair_rng = substream(seed, 4)
    for i in range(lip_pairs):
        base = pair_rng.dirichlet(np.ones(ps.n)) @ ps.points
        direction = pair_rng.standard_normal(d)
        direction /= np.linalg.norm(direction)
        xa = base + direction * (r * (1.0 + 0.3 * pair_rng.random()))
        xb = base + direction * (r * (1.3 + 0.9 * pair_rng.random()))
        ma, ha = smoothed_eval(f, seq, k, delta, xa, samples, seed + 5 + i)
        mb, hb = smoothed_eval(f, seq, k, delta, xb, samples, seed + 5 + i)
        gap = float(np.linalg.norm(xa - xb))
        quotient = abs(ma - mb) / gap
        allowance = 3.0 * math.sqrt(ha * ha + hb * hb) / gap
        if quotient > max_quotient:
            max_quotient, max_allowance = quotient, allowance
        if quotient > lip + allowance:
            lip_pass = False

    results = {
        "constant_hook": mean_c,
        "constant_pass": const_pass,
        "affine_mean": mean_a,
        "affine_target": target,
        "affine_pass": affine_pass,
        "zero_means": zero_means,
        "zero_pass": zero_pass,
        "one_means": one_means,
        "one_pass": one_pass,
        "max_mean_quotient": max_quotient,
        "mean_quotient_allowance": max_allowance,
        "lipschitz_bound": lip,
        "mean_lipschitz_pass": lip_pass,
    }
    results["pass"] = all(
        results[key]
        for key in (
            "constant_pass",
            "affine_pass",
            "zero_pass",
            "one_pass",
            "mean_lipschitz_pass",
        )
    )
    return results


def quad_check_sine(
    d: int,
    j: int,
    seed: int,
    amplitude: float = 0.1,
    a_norm: float = 1.0,
    use_fd: bool = False,
    h: float | None = None,
) -> dict:
    """Taylor rule against the closed-form sine integral and its bound."""
    rng = substream(seed, 0)
    a = rng.standard_normal(d)
    a *= a_norm / np.linalg.norm(a)
    b = float(rng.random() * 2.0 * math.pi)
    f = make_sine_integrand(a, b, amplitude)
    if use_fd:
        f = Integrand(eval=f.eval, exact_integral=f.exact_integral)
    dom = DomainSpec.cube(d)
    result = quad_taylor(f, dom, j, h=h)
    lip_j = amplitude * a_norm ** (j + 1)
    bound = ub_taylor(j, lip_j, d, 0.5)
    err = abs(result.value - f.exact_integral)
    fd_slack = 0.0 if not use_fd else 1e-5 * amplitude * (1.0 + a_norm) ** (j + 1)
    max_terms = math.comb(d + j, j)
    evals_cap = max_terms if not use_fd else max_terms * (j + 1) ** d
    return {
        "value": result.value,
        "exact": f.exact_integral,
        "error": err,
        "error_bound": bound.extras["value"],
        "fd_slack": fd_slack,
        "evaluations_used": result.evaluations_used,
        "evaluations_cap": evals_cap,
        "error_pass": err <= bound.extras["value"] + fd_slack,
        "cost_pass": result.evaluations_used <= evals_cap,
        "pass": err <= bound.extras["value"] + fd_slack
        and result.evaluations_used <= evals_cap,
    }


def one_point_check_c0(
    d: int, lipschitz: float, samples: int, seed: int
) -> dict:
    """One-point rule versus Monte Carlo for the distance fooling function.

    The hull is the single cube center, so the rule returns zero and the
    error bound R L sqrt(d) with R = 1/2 and zero tail applies.
    """
    dom = DomainSpec.cube(d)
    ps = PointSet(dom.center[None, :], domain=dom)
    f = fooling_c0(ps, lipschitz)
    integrand = Integrand(eval=f)
    result = quad_one_point(integrand, dom)
    ref, half = reference_integral(integrand, dom, samples, seed)
    bound = ub_one_point_c0(lipschitz, d, 0.5, 0.0)
    err = abs(ref - result.value)
    return {
        "one_point_value": result.value,
        "reference_mean": ref,
        "reference_half_width": half,
        "error": err,
        "error_bound": bound.extras["value"],
        "pass": err <= bound.extras["value"] + 3.0 * half,
    }
