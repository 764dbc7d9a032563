"""
Near-optimal regions with reduced effort: set aside the lightest points of the
reduced search space (total null probability at most c), optimize over the
rest with the correspondingly smaller level, then add back every set-aside
point the up-closure allows.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Optional

from ..config import config
from ..dist import JointDistribution
from ..model.levels import level_budget
from ..region import Objective, RejectionRegion, dominance, iter_bits
from .branch_bound import OptResult, objective_values, solve
from .preprocess import preprocess

logger = logging.getLogger(__name__)


def split_light_points(dist: JointDistribution, space: int, c_weight: int) -> int:
    """
    Largest set C of lightest points in ``space`` with total weight <= c_weight
    and every point of C strictly lighter than every point left outside.
    """
    weights = dist.weights
    ascending = sorted(iter_bits(space), key=lambda i: (weights[i], -i))
    taken = 0
    acc = 0
    for n, i in enumerate(ascending):
        if acc + weights[i] > c_weight:
            break
        acc += weights[i]
        taken = n + 1
    # never cut inside a group of equal weights
    while 0 < taken < len(ascending) and weights[ascending[taken - 1]] == weights[ascending[taken]]:
        taken -= 1
    out = 0
    for i in ascending[:taken]:
        out |= 1 << i
    return out


def small_prob_split(
    dist: JointDistribution,
    objective: Objective,
    alpha: Fraction,
    c: float,
    forbidden: Optional[Iterable[int]] = None,
    max_iter: Optional[int] = None,
) -> OptResult:
    max_iter = config.max_iter if max_iter is None else max_iter
    objective.check(dist)
    c_frac = c if isinstance(c, Fraction) else Fraction(repr(float(c)))

    pre = preprocess(dist, alpha, forbidden)
    c_weight = min(level_budget(dist.total_weight, c_frac), pre.residual_budget)
    light = split_light_points(dist, pre.v2, c_weight)
    light_weight = sum(dist.weights[i] for i in iter_bits(light))

    best, iterations, confirmed = solve(
        dist, objective, pre.v2 & ~light, pre.residual_budget - light_weight, max_iter
    )

    dom = dominance(dist)
    region = pre.forced | best
    changed = True
    while changed:
        changed = False
        for i in iter_bits(light & ~region):
            if not dom.strict_up(i) & ~region:
                region |= 1 << i
                changed = True

    result = RejectionRegion(dist, region)
    logger.debug(
        "small-probability split: |C|=%d P(C)=%s iterations=%d",
        light.bit_count(), Fraction(light_weight, dist.total_weight), iterations,
    )
    return OptResult(
        region=result,
        iterations=iterations,
        confirmed_optimal=confirmed,
        objective=objective,
        objective_value=objective_values(result, objective),
        preprocessing=pre,
    )
