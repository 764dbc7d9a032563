"""A single level-alpha region for one subset, with everything needed to report it."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..bonf import CriticalBoundaries, boundary_region, minp_region
from ..exceptions import InputError
from ..model import MarginVector, normalize_subset
from ..region import ObjectiveKind, RejectionRegion
from ..search import PreprocessResult, branch_and_bound, greedy_region, small_prob_split
from .consonance import fisher_forbidden_block
from .methods import MethodName, MethodSpec, boundaries_for, fisher_rule, subset_distribution

logger = logging.getLogger(__name__)


@dataclass
class RegionReport:
    method: str
    subset: Tuple[int, ...]
    alpha: Fraction
    region: RejectionRegion
    boundaries: Optional[CriticalBoundaries] = None
    iterations: int = 0
    confirmed_optimal: bool = True
    preprocessing: Optional[PreprocessResult] = None

    def dump(self) -> Dict:
        out = {
            "method": self.method,
            "subset": list(self.subset),
            "alpha": float(self.alpha),
            "iterations": self.iterations,
            "confirmed_optimal": self.confirmed_optimal,
            **self.region.dump(),
        }
        if self.preprocessing is not None:
            v, v1, v2 = self.preprocessing.sizes
            out["preprocessing"] = {"V": v, "V1": v1, "V2": v2}
        if self.boundaries is not None:
            out["boundaries"] = self.boundaries.dump()["boundaries"]
        return out


def construct_region(
    method: MethodSpec,
    m: MarginVector,
    alpha: Fraction,
    subset=None,
) -> RegionReport:
    J = normalize_subset(subset, m.k)
    if method.alt is not None and method.alt.k != m.k:
        raise InputError(f"alternative has {method.alt.k} endpoints, margins have {m.k}")
    dist = subset_distribution(method, m, J)

    if method.is_boundary_method:
        b = boundaries_for(method, m, J, alpha)
        return RegionReport(method.label, J, alpha, boundary_region(b, dist), boundaries=b)
    if len(J) == 1:
        rule = fisher_rule(m, J[0], alpha)
        region = RejectionRegion.from_points(dist, rule.region.points)
        return RegionReport("fisher", J, alpha, region)
    if method.name is MethodName.MINP:
        return RegionReport(method.label, J, alpha, minp_region(dist, alpha))

    forbidden = None
    if method.consonant:
        if len(J) != 2:
            raise InputError("consonant joint regions are only defined for two endpoints")
        forbidden = [dist.index_of(t) for t in fisher_forbidden_block(dist, alpha)]
    if method.name is MethodName.GREEDY:
        region = greedy_region(dist, ObjectiveKind.ALPHA, "argmin", alpha, forbidden)
        return RegionReport(method.label, J, alpha, region)

    if method.small_prob_c:
        res = small_prob_split(dist, method.objective, alpha, method.small_prob_c, forbidden,
                               method.max_iter)
    else:
        res = branch_and_bound(dist, method.objective, alpha, forbidden, method.max_iter)
    return RegionReport(
        method.label, J, alpha, res.region,
        iterations=res.iterations,
        confirmed_optimal=res.confirmed_optimal,
        preprocessing=res.preprocessing,
    )
