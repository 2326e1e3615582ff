"""Pareto-based placement of a floating 3D UI element.

Produces a Pareto-optimal set of candidate placements for ergonomic
objectives, reduces it to a handful of qualitatively different trade-offs,
lets a human pick one, and folds the pick back into future runs as
objective-space constraints.
"""

from ._kernels import IMPLEMENTATION as kernel_implementation
from .anneal import AnnealConfig, anneal_weighted_sum, weighted_sum_cost
from .ergonomics import (
    DEGENERACY_RADIUS,
    UserPose,
    arm_angle,
    default_pose,
    neck_angle,
    reach_violation,
    vec3,
)
from .nsga3 import Nsga3Config, nsga3_run
from .operators import das_dennis, polynomial_mutation, sbx_crossover
from .pareto import (
    ParetoFront,
    RankedPopulation,
    brute_force_front,
    dominates,
    igd,
    non_dominated_sort,
    pareto_filter,
)
from .problem import (
    AdaptationProblem,
    Bounds,
    Candidate,
    PreferenceConstraint,
    default_problem,
    evaluate,
    evaluate_batch,
)
from .selection import (
    Session,
    TradeoffScore,
    apply_selection,
    front_mu,
    new_session,
    present_candidates,
    reduce_front,
    run_adaptation_round,
    tradeoff_mu,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptationProblem",
    "AnnealConfig",
    "Bounds",
    "Candidate",
    "DEGENERACY_RADIUS",
    "Nsga3Config",
    "ParetoFront",
    "PreferenceConstraint",
    "RankedPopulation",
    "Session",
    "TradeoffScore",
    "UserPose",
    "anneal_weighted_sum",
    "apply_selection",
    "arm_angle",
    "brute_force_front",
    "das_dennis",
    "default_pose",
    "default_problem",
    "dominates",
    "evaluate",
    "evaluate_batch",
    "front_mu",
    "igd",
    "kernel_implementation",
    "neck_angle",
    "new_session",
    "non_dominated_sort",
    "nsga3_run",
    "pareto_filter",
    "polynomial_mutation",
    "present_candidates",
    "reach_violation",
    "reduce_front",
    "run_adaptation_round",
    "sbx_crossover",
    "tradeoff_mu",
    "vec3",
    "weighted_sum_cost",
]
