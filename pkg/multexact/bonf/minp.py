"""
minP: the minimum marginal Fisher p-value as joint test statistic, calibrated
against its exact permutation distribution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from ..dist import JointDistribution, marginal_tail_table
from ..model.levels import level_budget
from ..region import RejectionRegion


def min_p_weights(dist: JointDistribution) -> List[int]:
    """Per support point, min_i S_i(t_i) as an integer over dist.total_weight."""
    tails = [marginal_tail_table(dist.margins, j) for j in range(dist.k_eff)]
    return [min(tail.weight(x) for tail, x in zip(tails, p.t)) for p in dist.points]


def minp_threshold(dist: JointDistribution, alpha: Fraction) -> Fraction:
    """Largest attainable q with P_H0(min_i S_i(T_i) <= q) <= alpha (0 if none)."""
    minw = min_p_weights(dist)
    budget = level_budget(dist.total_weight, alpha)
    mass = {}
    for w, p in zip(minw, dist.points):
        mass[w] = mass.get(w, 0) + p.null_weight
    q = 0
    acc = 0
    for w in sorted(mass):
        acc += mass[w]
        if acc > budget:
            break
        q = w
    return Fraction(q, dist.total_weight)


def minp_region(dist: JointDistribution, alpha: Fraction) -> RejectionRegion:
    q = minp_threshold(dist, alpha)
    limit = q * dist.total_weight
    minw = min_p_weights(dist)
    if q == 0:
        return RejectionRegion.empty(dist)
    return RejectionRegion.from_indices(dist, (i for i, w in enumerate(minw) if w <= limit))


def minp_p_value(dist: JointDistribution, t_obs: Sequence[int]) -> Fraction:
    """P_H0(min_i S_i(T_i) <= observed minimum)."""
    minw = min_p_weights(dist)
    obs = minw[dist.index_of(t_obs)]
    hit = sum(p.null_weight for w, p in zip(minw, dist.points) if w <= obs)
    return Fraction(hit, dist.total_weight)
