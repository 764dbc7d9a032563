"""
Branch-and-bound over up-closed subsets of the support.

Every node fixes some points in (x=1) and some out (x=0). Fixing a point in
fixes its whole up-set in; fixing it out fixes its whole down-set out, so the
in-set of every node is itself an up-closed region. The lower bound of a node
is the objective of its in-set (a feasible region), the upper bound the
objective with every undecided point added, tightened on the primary objective
by a fractional-knapsack bound over the undecided points.

Objective values are integers: null weights, counts, and alternative masses
scaled by 2**50, so the search is exact and lexicographic ties are well defined.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from ..config import config
from ..dist import JointDistribution
from ..exceptions import InputError
from ..region import (
    Objective,
    ObjectiveKind,
    RejectionRegion,
    dominance,
    evaluate,
    iter_bits,
    point_values,
)
from .preprocess import PreprocessResult, preprocess, weight_of

logger = logging.getLogger(__name__)

_POWER_SCALE = 1 << 50


def scaled_values(kind: ObjectiveKind, dist: JointDistribution) -> List[int]:
    values = point_values(kind, dist)
    if kind is ObjectiveKind.POWER:
        return [int(round(v * _POWER_SCALE)) for v in values]
    return [int(v) for v in values]


@dataclass
class SearchNode:
    in_mask: int
    out_mask: int
    committed_weight: int
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    depth: int
    out_values: Tuple[int, ...] = ()


@dataclass(frozen=True)
class OptResult:
    region: RejectionRegion
    iterations: int
    confirmed_optimal: bool
    objective: Objective
    objective_value: Tuple = field(default=())
    preprocessing: Optional[PreprocessResult] = None

    @property
    def value(self):
        return self.objective_value[0] if self.objective_value else None


class _Search:
    """One branch-and-bound run on a fixed search space."""

    def __init__(
        self,
        dist: JointDistribution,
        objective: Objective,
        space: int,
        budget: int,
    ):
        self.dom = dominance(dist)
        self.weights = dist.weights
        self.space = space
        self.budget = budget
        self.values = [scaled_values(kind, dist) for kind in objective.chain]
        self.space_totals = tuple(weight_of(space, vals) for vals in self.values)
        if any(v < 0 for vals in self.values for v in vals):
            raise InputError("objective must be monotone under set inclusion")
        # undecided points in order of decreasing value per unit of null weight
        primary = self.values[0]
        self.ratio_order = sorted(
            iter_bits(space),
            key=lambda i: (Fraction(primary[i], self.weights[i]), -i),
            reverse=True,
        )

    # ------------------------------------------------------------------
    # Bounds
    # ------------------------------------------------------------------

    def _knapsack_bound(self, in_value: int, in_weight: int, decided: int) -> int:
        capacity = self.budget - in_weight
        primary = self.values[0]
        bound = in_value
        left = capacity
        for i in self.ratio_order:
            if decided >> i & 1:
                continue
            w = self.weights[i]
            if w > capacity:
                # can never join this node's region
                continue
            if w <= left:
                left -= w
                bound += primary[i]
            else:
                bound += primary[i] * left // w
                break
        return bound

    def _node(self, in_mask: int, out_mask: int, in_weight: int, in_vals, out_vals) -> SearchNode:
        decided = in_mask | out_mask
        upper = [tot - ov for tot, ov in zip(self.space_totals, out_vals)]
        upper[0] = min(upper[0], self._knapsack_bound(in_vals[0], in_weight, decided))
        return SearchNode(
            in_mask=in_mask,
            out_mask=out_mask,
            committed_weight=in_weight,
            lower=tuple(in_vals),
            upper=tuple(upper),
            depth=decided.bit_count(),
            out_values=tuple(out_vals),
        )

    def _sums(self, mask: int) -> Tuple[int, ...]:
        return tuple(weight_of(mask, vals) for vals in self.values)

    # ------------------------------------------------------------------
    # Main loop
    # ------------------------------------------------------------------

    def run(self, max_iter: int) -> Tuple[int, int, bool]:
        """Returns (best in-mask, iterations, confirmed)."""
        zero = (0,) * len(self.values)
        root = self._node(0, 0, 0, zero, zero)
        best_value = root.lower
        best_mask = 0
        heap: list = []
        seq = 0

        def push(node: SearchNode):
            nonlocal seq
            key = (tuple(-v for v in node.lower), -node.depth, seq)
            heapq.heappush(heap, (key, node))
            seq += 1

        if self.space & ~(root.in_mask | root.out_mask) and root.upper > best_value:
            push(root)

        iterations = 0
        confirmed = True
        while heap:
            _, node = heapq.heappop(heap)
            if node.upper <= best_value:
                continue
            if iterations >= max_iter:
                confirmed = False
                break
            iterations += 1

            undecided = self.space & ~(node.in_mask | node.out_mask)
            i = (undecided & -undecided).bit_length() - 1

            children = []
            add_in = self.dom.up_masks[i] & self.space & ~node.in_mask
            add_w = weight_of(add_in, self.weights)
            if node.committed_weight + add_w <= self.budget:
                in_vals = [a + b for a, b in zip(node.lower, self._sums(add_in))]
                children.append(
                    self._node(node.in_mask | add_in, node.out_mask,
                               node.committed_weight + add_w, in_vals, node.out_values)
                )
            add_out = self.dom.down_masks[i] & self.space & ~node.out_mask
            out_vals = [a + b for a, b in zip(node.out_values, self._sums(add_out))]
            children.append(
                self._node(node.in_mask, node.out_mask | add_out, node.committed_weight,
                           node.lower, out_vals)
            )

            for child in children:
                if child.lower > best_value:
                    best_value = child.lower
                    best_mask = child.in_mask
                if self.space & ~(child.in_mask | child.out_mask) and child.upper > best_value:
                    push(child)

        return best_mask, iterations, confirmed


def solve(
    dist: JointDistribution,
    objective: Objective,
    space: int,
    budget: int,
    max_iter: int,
) -> Tuple[int, int, bool]:
    """Best in-mask within ``space`` under an integer weight budget."""
    return _Search(dist, objective, space, budget).run(max_iter)


def objective_values(region: RejectionRegion, objective: Objective) -> Tuple:
    return tuple(evaluate(region, kind) for kind in objective.chain)


def branch_and_bound(
    dist: JointDistribution,
    objective: Objective,
    alpha: Fraction,
    forbidden: Optional[Iterable[int]] = None,
    max_iter: Optional[int] = None,
    use_preprocessing: bool = True,
) -> OptResult:
    """Optimal up-closed level-alpha region for a (lexicographic) linear objective."""
    max_iter = config.max_iter if max_iter is None else max_iter
    objective.check(dist)
    pre = preprocess(dist, alpha, forbidden, steps=2 if use_preprocessing else 0)
    space = pre.v2
    best, iterations, confirmed = solve(dist, objective, space, pre.residual_budget, max_iter)
    region = RejectionRegion(dist, pre.forced | best)
    if not confirmed:
        logger.warning(
            "branch-and-bound hit the iteration cap (%d); returning best feasible region",
            max_iter,
        )
    logger.debug(
        "branch-and-bound %s: |V2|=%d iterations=%d |R|=%d",
        "/".join(k.value for k in objective.chain), space.bit_count(), iterations, region.size,
    )
    return OptResult(
        region=region,
        iterations=iterations,
        confirmed_optimal=confirmed,
        objective=objective,
        objective_value=objective_values(region, objective),
        preprocessing=pre,
    )
