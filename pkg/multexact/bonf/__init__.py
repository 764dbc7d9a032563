from .boundaries import (
    ALPHA_SUM,
    AltTail,
    BonfObjective,
    BonfObjectiveKind,
    CriticalBoundaries,
    alt_tail,
    boundary_region,
    greedy_boundaries,
    hkt,
    marginal_tails,
    optimize_boundaries,
    power_sum_objective,
    tarone,
    unweighted,
    westfall_troendle,
)
from .ilp import export_bonf_ilp
from .minp import min_p_weights, minp_p_value, minp_region, minp_threshold

__all__ = [
    "ALPHA_SUM",
    "AltTail",
    "BonfObjective",
    "BonfObjectiveKind",
    "CriticalBoundaries",
    "alt_tail",
    "boundary_region",
    "export_bonf_ilp",
    "greedy_boundaries",
    "hkt",
    "marginal_tails",
    "min_p_weights",
    "minp_p_value",
    "minp_region",
    "minp_threshold",
    "optimize_boundaries",
    "power_sum_objective",
    "tarone",
    "unweighted",
    "westfall_troendle",
]
