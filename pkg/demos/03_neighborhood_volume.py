"""How little room a hull neighborhood occupies.

The volume of the delta*sqrt(d)-neighborhood of the convex hull of n
points admits two closed-form bounds: n ((R_d + 2 delta) sqrt(pi e/2))^d
for any domain with radius ratio R_d, and n (d+1) gamma~(delta)^d on
the cube for delta < 1/12.  Both decay exponentially in d, so even a
generously inflated hull is invisible to uniform sampling in modest
dimensions; Monte Carlo confirms the bounds wherever they bite.
"""

import math

import numpy as np

from curselab import (
    DomainSpec,
    PointSet,
    cube_hull_bound,
    gamma_constant,
    gamma_tilde_cube,
    mc_hull_neighborhood_volume,
    profile_integral,
    small_radius_hull_bound,
)

# The cube constant comes from a one-dimensional minimization.
gc = gamma_constant(0.26, 0.25)
print(f"gamma(1/4 + 1/100, 1/4) = {gc.value:.6f} "
      f"(minimizer alpha* = {gc.alpha_star:.4f}, below 7/8: {gc.value < 7/8})")
print(f"probe at alpha = 9/2 gives {profile_integral(4.5, 0.26, 0.25):.6f}")
print(f"slope of the integral at alpha = 0: {gc.slope_at_zero:+.6f} "
      "(negative exactly when the bound is nontrivial)")

print("\nCube bound n (d+1) gamma~^d for n=32, delta=1/100:")
for d in (20, 40, 60, 80, 120):
    log_bound = cube_hull_bound(32, d, 0.01)
    print(f"  d={d:4d}: bound = {math.exp(log_bound):.3e}")

print("\nSmall-radius bound for the volume-one Euclidean ball, n=16, delta=0.05:")
for d in (10, 20, 40, 80):
    dom = DomainSpec.lp_ball(2, d)
    log_bound = small_radius_hull_bound(16, d, dom.radius_ratio, 0.05)
    print(f"  d={d:4d}: R_d = {dom.radius_ratio:.4f}, bound = {math.exp(log_bound):.3e}")

print("\nMonte Carlo against the bound (d=12 ball, 16 points, 10^5 samples):")
dom = DomainSpec.lp_ball(2, 12)
rng = np.random.default_rng(3)
ps = PointSet(dom.sample(rng, 16), domain=dom)
for delta in (0.05, 0.1, 0.15):
    est = mc_hull_neighborhood_volume(ps, dom, delta, 100_000, seed=5)
    print(f"  delta={delta:.2f}: mean={est.mean:.5f} +- {est.half_width_95:.5f}  "
          f"bound={math.exp(est.bound_log):.3e}  within bound: {est.passed}")

print("\nIn one dimension the estimate matches interval arithmetic:")
dom1 = DomainSpec.cube(1)
ps1 = PointSet(np.array([[0.3], [0.5]]), domain=dom1)
est = mc_hull_neighborhood_volume(ps1, dom1, 0.1, 100_000, seed=9)
print(f"  K = [0.3, 0.5], delta = 0.1: mean = {est.mean:.4f}, exact = 0.4")

gt = gamma_tilde_cube(0.01)
print(f"\ngamma~(1/100) = {gt.value:.6f} < 7/8 certified: {gt.value < 7/8}")
