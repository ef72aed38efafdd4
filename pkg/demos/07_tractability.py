"""From derivative decay rates to complexity verdicts.

A smoothness profile states how the Lipschitz bounds L_{j,d} decay with
the dimension.  The classifier applies the sharpest known criterion:
Lipschitz classes suffer the curse exactly when L_{0,d} sqrt(d) stays
bounded away from zero; gradient classes add the condition
L_{1,d} d > 0; for two or more derivatives the known conditions leave a
gap, reported honestly; infinitely smooth classes range from the curse
(factorial growth) to quasi-polynomial tractability (factorial decay
with d^{-(j+1)/2}).
"""

import math

from curselab import (
    SmoothnessProfile,
    TailRule,
    classify,
    lb_lipschitz,
    lb_lipschitz_gradient_cube,
    non_uniform_weak_witness,
    quasi_poly_cost_bound,
    unit_derivative_cost_bound,
)

cases = [
    ("Lipschitz, L = 3/sqrt(d)",
     SmoothnessProfile.finite([(3.0, -0.5)]), "convex_P"),
    ("Lipschitz, L = 3/d^0.6",
     SmoothnessProfile.finite([(3.0, -0.6)]), "convex_P"),
    ("gradient class, L1 = o(1/d)",
     SmoothnessProfile.finite([(1.0, -0.5), (1.0, -1.2)]), "small_radius"),
    ("gradient class, L1 = 1/d",
     SmoothnessProfile.finite([(1.0, -0.5), (1.0, -1.0)]), "small_radius"),
    ("k=2 with L2 between the known conditions",
     SmoothnessProfile.finite([(1.0, -0.5), (1.0, -1.0), (1.0, -1.2)]), "cube"),
    ("all directional derivatives bounded by one",
     SmoothnessProfile.infinite((1.0, 0.0), TailRule(log_constant=0.0)), "cube"),
    ("factorial growth (j!)^1.5 with L_j d bounded below",
     SmoothnessProfile.infinite(
         (1.0, -0.5), TailRule(log_constant=0.0, factorial_power=1.5,
                               d_exponent_base=1.0)), "cube"),
    ("factorial decay with d^{-(j+1)/2}",
     SmoothnessProfile.infinite(
         (1.0, 0.0), TailRule(log_constant=0.0, log_base=math.log(1.5),
                              factorial_power=1.0, d_exponent_base=0.5,
                              d_exponent_slope=0.5)), "cube"),
]

for label, profile, family in cases:
    verdict = classify(profile, family)
    print(f"{label:55s} -> {verdict.verdict:17s} [{verdict.rule}]")

print("\nInstantiated lower bounds never overflow (log-domain):")
report = lb_lipschitz_gradient_cube(0.5, 10_000)
print(f"  gradient cube bound at d=10^4: ln n >= {report.log_value:.1f}"
      f"  (that is (8/7)^10000 / 20002)")
report = lb_lipschitz(0.25, 500, 0.5, a=2.0)
print(f"  Lipschitz bound at d=500:      ln n >= {report.log_value:.1f}")

print("\nCost bounds for infinitely smooth classes:")
qpt = quasi_poly_cost_bound(1e-6, 100, 1.0, 2.0)
print(f"  quasi-polynomial: k_eps = {qpt.extras['k_eps']}, "
      f"ln n <= {qpt.log_value:.1f} at (d=100, eps=1e-6)")
unit = unit_derivative_cost_bound(1e-6, 100, 5.0)
print(f"  unit-derivative class: ln n <= {unit.log_value:.1f} at the same point")

print("\nUniform weak tractability fails under any polynomial decay (finite k):")
witness = non_uniform_weak_witness(m=2.0, k=1, alpha=0.5)
print(f"  m=2, alpha=1/2: liminf of the witness ratio = "
      f"{witness.extras['limit']:.4f} > 0")
