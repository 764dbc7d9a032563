"""
Search-space reduction ahead of branch-and-bound.

Step 1 drops every point whose up-set alone already exceeds the level.
Step 2 forces every point t for which the largest region avoiding t, plus t
itself, still fits the level: such a t belongs to every optimal region.
Forbidden points (and everything they dominate from below) are dropped first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from ..dist import JointDistribution
from ..model.levels import level_budget
from ..region import dominance, iter_bits, mask_of

logger = logging.getLogger(__name__)


def weight_of(mask: int, weights: List[int]) -> int:
    return sum(weights[i] for i in iter_bits(mask))


@dataclass(frozen=True)
class PreprocessResult:
    v: int                   # support minus the forbidden closure
    v1: int
    v2: int
    forced: int
    excluded: int            # forbidden points and everything below them
    budget: int              # floor(alpha * total_weight)
    residual_budget: int     # budget minus the weight of the forced points
    residual_alpha: Fraction

    @property
    def sizes(self) -> tuple:
        return (
            (self.v | self.excluded).bit_count(),
            self.v1.bit_count(),
            self.v2.bit_count(),
        )


def preprocess(
    dist: JointDistribution,
    alpha: Fraction,
    forbidden: Optional[Iterable[int]] = None,
    steps: int = 2,
) -> PreprocessResult:
    dom = dominance(dist)
    weights = dist.weights
    total = dist.total_weight
    budget = level_budget(total, alpha)

    excluded = dom.down_closure(mask_of(forbidden or ()))
    v = dom.full_mask & ~excluded

    if steps < 1:
        return PreprocessResult(v, v, v, 0, excluded, budget, budget, alpha)

    v1 = 0
    for i in iter_bits(v):
        if weight_of(dom.up_masks[i], weights) <= budget:
            v1 |= 1 << i

    forced = 0
    if steps >= 2:
        w_v1 = weight_of(v1, weights)
        for i in iter_bits(v1):
            below = weight_of(dom.down_masks[i] & v1, weights)
            if w_v1 - below + weights[i] <= budget:
                forced |= 1 << i

    v2 = v1 & ~forced
    w_forced = weight_of(forced, weights)
    result = PreprocessResult(
        v=v,
        v1=v1,
        v2=v2,
        forced=forced,
        excluded=excluded,
        budget=budget,
        residual_budget=budget - w_forced,
        residual_alpha=alpha - Fraction(w_forced, total),
    )
    logger.debug("preprocess |V|,|V1|,|V2| = %s, forced=%d", result.sizes, forced.bit_count())
    return result
