"""
Rejection regions on the support lattice: validity, objective values and
region-based p-values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..dist import JointDistribution
from ..exceptions import InputError
from ..model.levels import within_level
from .lattice import dominance, iter_bits, mask_of
from .objective import Objective, ObjectiveKind, point_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RejectionRegion:
    dist: JointDistribution = field(repr=False)
    mask: int

    @classmethod
    def empty(cls, dist: JointDistribution) -> "RejectionRegion":
        return cls(dist, 0)

    @classmethod
    def from_indices(cls, dist: JointDistribution, indices: Iterable[int]) -> "RejectionRegion":
        return cls(dist, mask_of(indices))

    @classmethod
    def from_points(
        cls, dist: JointDistribution, points: Iterable[Sequence[int]]
    ) -> "RejectionRegion":
        return cls(dist, mask_of(dist.index_of(t) for t in points))

    @classmethod
    def from_predicate(
        cls, dist: JointDistribution, rejects: Callable[[Tuple[int, ...]], bool]
    ) -> "RejectionRegion":
        return cls(dist, mask_of(i for i, p in enumerate(dist.points) if rejects(p.t)))

    @cached_property
    def members(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    @property
    def points(self) -> List[Tuple[int, ...]]:
        return [self.dist.points[i].t for i in self.members]

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def weight(self) -> int:
        return sum(self.dist.points[i].null_weight for i in self.members)

    @property
    def level(self) -> Fraction:
        return Fraction(self.weight, self.dist.total_weight)

    @property
    def power(self) -> Optional[float]:
        if not self.dist.has_alternative:
            return None
        return float(sum(self.dist.points[i].alt_mass for i in self.members))

    def contains(self, t: Sequence[int]) -> bool:
        key = tuple(int(x) for x in t)
        if key not in self.dist:
            return False
        return bool(self.mask >> self.dist.index_of(key) & 1)

    def dump(self) -> Dict:
        level = self.level
        out = {
            "members": [list(t) for t in self.points],
            "size": self.size,
            "level_num": str(level.numerator),
            "level_den": str(level.denominator),
            "level": float(level),
        }
        if self.dist.has_alternative:
            out["power"] = self.power
        return out


@dataclass
class ValidityReport:
    valid: bool
    level_ok: bool
    up_closed: bool
    level: Fraction
    # (member t, dominating t missing from the region)
    missing: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)


def is_valid(region: RejectionRegion, alpha: Fraction) -> ValidityReport:
    dist = region.dist
    dom = dominance(dist)
    missing = []
    for i in region.members:
        for j in iter_bits(dom.up_masks[i] & ~region.mask):
            missing.append((dist.points[i].t, dist.points[j].t))
    level_ok = within_level(region.weight, dist.total_weight, alpha)
    return ValidityReport(
        valid=level_ok and not missing,
        level_ok=level_ok,
        up_closed=not missing,
        level=region.level,
        missing=missing,
    )


def evaluate(
    region: RejectionRegion,
    objective: Union[Objective, ObjectiveKind, str],
    dist: Optional[JointDistribution] = None,
) -> Union[Fraction, int, float]:
    """f_A as an exact rational, f_C as an int, f_P as a float."""
    if dist is not None and dist is not region.dist:
        raise InputError("region is defined on a different distribution")
    kind = objective.kind if isinstance(objective, Objective) else ObjectiveKind(objective)
    if kind is ObjectiveKind.ALPHA:
        return region.level
    if kind is ObjectiveKind.AREA:
        return region.size
    if not region.dist.has_alternative:
        raise InputError("power objective requires a distribution with alternative masses")
    values = point_values(kind, region.dist)
    return float(sum(values[i] for i in region.members))


# ---------------------------------------------------------------------------
# p-values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionPValue:
    p: Fraction
    observed_in_region: bool
    steps: int

    def inconsistent_at(self, alpha: Fraction) -> bool:
        """True when t_obs lies outside the region although p <= alpha."""
        return not self.observed_in_region and self.p <= alpha


def region_p_value(region: RejectionRegion, t_obs: Sequence[int]) -> RegionPValue:
    """
    Shrink (t_obs in R) or grow (t_obs not in R) the region one point at a time,
    keeping it up-closed, until t_obs is the point moved. Removal takes the
    removable point of largest null weight; addition takes the addable point of
    smallest null weight. Ties go to the earlier point in canonical order.
    """
    dist = region.dist
    dom = dominance(dist)
    obs = dist.index_of(t_obs)
    weights = dist.weights
    current = region.mask
    level_weight = region.weight
    steps = 0

    if current >> obs & 1:
        while True:
            # canonical order is by decreasing weight, so the first minimal
            # member is the heaviest removable point
            pick = next(i for i in iter_bits(current) if dom.down_masks[i] & current == 1 << i)
            steps += 1
            if pick == obs:
                return RegionPValue(Fraction(level_weight, dist.total_weight), True, steps)
            current &= ~(1 << pick)
            level_weight -= weights[pick]

    outside = dom.full_mask & ~current
    while True:
        pick = -1
        best = None
        for i in iter_bits(outside):
            if dom.strict_up(i) & ~current:
                continue
            if best is None or weights[i] < best:
                best = weights[i]
                pick = i
        steps += 1
        current |= 1 << pick
        outside &= ~(1 << pick)
        level_weight += weights[pick]
        if pick == obs:
            return RegionPValue(Fraction(level_weight, dist.total_weight), False, steps)
