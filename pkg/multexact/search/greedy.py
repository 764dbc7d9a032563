"""
Greedy construction of a level-alpha region: starting from the empty set, add
one point at a time, always one whose strict up-set is already in the region,
choosing the point whose objective increment is smallest (argmin) or largest
(argmax). Every intermediate region is valid, so the resulting test is
alpha-consistent.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Union

from ..dist import JointDistribution
from ..model.levels import level_budget
from ..region import ObjectiveKind, RejectionRegion, dominance, iter_bits, mask_of, point_values


class GreedyOperator(str, Enum):
    ARGMIN = "argmin"
    ARGMAX = "argmax"


def greedy_region(
    dist: JointDistribution,
    f: Union[ObjectiveKind, str] = ObjectiveKind.ALPHA,
    operator: Union[GreedyOperator, str] = GreedyOperator.ARGMIN,
    alpha: Fraction = Fraction(1, 40),
    forbidden: Optional[Iterable[int]] = None,
) -> RejectionRegion:
    kind = ObjectiveKind(f)
    op = GreedyOperator(operator)
    dom = dominance(dist)
    weights = dist.weights
    increments = point_values(kind, dist)
    budget = level_budget(dist.total_weight, alpha)
    candidates = dom.full_mask & ~dom.down_closure(mask_of(forbidden or ()))

    region = 0
    used = 0
    while True:
        pick = -1
        best = None
        for i in iter_bits(candidates & ~region):
            if dom.strict_up(i) & ~region or used + weights[i] > budget:
                continue
            inc = increments[i]
            better = best is None or (inc < best if op is GreedyOperator.ARGMIN else inc > best)
            if better:
                best = inc
                pick = i
        if pick < 0:
            break
        region |= 1 << pick
        used += weights[pick]
        assert dom.is_up_closed(region) and used <= budget
    return RejectionRegion(dist, region)
