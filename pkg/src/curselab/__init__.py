"""curselab: numerical laboratory for curse-of-dimensionality bounds.

Library layout:

* :mod:`curselab.geometry` -- volume-one domains, lp radii, the critical
  exponent of the small-radius regime.
* :mod:`curselab.hull` -- convex-hull projection (Wolfe min-norm point),
  neighborhood distances, batched classification.
* :mod:`curselab.volume` -- analytic hull-neighborhood volume bounds and
  Monte Carlo estimators.
* :mod:`curselab.fooling` -- worst-case integrands with certified
  smoothness, convolution smoothing.
* :mod:`curselab.quadrature` -- one-point and Taylor rules, reference
  Monte Carlo integration.
* :mod:`curselab.bounds` -- complexity bound evaluators and the
  tractability classifier.
* :mod:`curselab.cli` -- the ``curselab`` experiment runner.
"""

from .geometry import (
    DomainSpec,
    NormalizedRadius,
    SMALL_RADIUS_THRESHOLD,
    ball_volume_bounds,
    lp_normalized_radius,
    lp_unit_ball_volume,
    radius_limit_ratio,
    solve_p_star,
)
from .hull import (
    HullProjection,
    PointSet,
    dist_to_neighborhood,
    elekes_cover_check,
    project_onto_hull,
    project_onto_neighborhood,
    within_distance,
)
from .volume import (
    GammaConstant,
    VolumeEstimate,
    ball_tail_mass,
    cube_hull_bound,
    gamma_constant,
    gamma_tilde_cube,
    mc_hull_neighborhood_volume,
    profile_integral,
    small_radius_hull_bound,
)
from .fooling import (
    AlphaSequence,
    FoolingFunction,
    ProfileP,
    certificate,
    fooling_c0,
    fooling_c0_eval,
    fooling_c1,
    fooling_c1_eval,
    fooling_cinf,
    fooling_smoothed,
    make_alpha_sequence,
    profile_eval,
    smoothed_eval,
)
from .quadrature import (
    Integrand,
    QuadratureResult,
    cube_moment,
    fd_partial,
    make_sine_integrand,
    quad_one_point,
    quad_taylor,
    reference_integral,
    sine_integral_cube,
)
from .bounds import (
    BoundReport,
    SmoothnessProfile,
    TailRule,
    Verdict,
    classify,
    lb_higher_smoothness,
    lb_lipschitz,
    lb_lipschitz_gradient_cube,
    non_uniform_weak_witness,
    quasi_poly_cost_bound,
    ub_one_point_c0,
    ub_one_point_c1,
    ub_taylor,
    unit_derivative_cost_bound,
)

__version__ = "0.1.0"
