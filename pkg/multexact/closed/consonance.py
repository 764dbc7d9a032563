"""
Consonance constraints for closed tests.

joint_k2               the global region of a two-endpoint joint test may not
                       contain points where neither marginal Fisher test rejects
bonferroni_monotone    subset boundaries may not exceed the boundaries any
                       superset uses for the same endpoint
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from ..bonf import CriticalBoundaries
from ..dist import JointDistribution, joint_null_distribution, marginal_tail_table
from ..exceptions import InputError
from ..region import RejectionRegion
from .methods import MethodName, MethodSpec


class ConsonanceMode(str, Enum):
    NONE = "none"
    JOINT_K2 = "joint_k2"
    BONFERRONI_MONOTONE = "bonferroni_monotone"


@dataclass(frozen=True)
class ConsonanceSpec:
    mode: ConsonanceMode = ConsonanceMode.NONE

    def __post_init__(self):
        object.__setattr__(self, "mode", ConsonanceMode(self.mode))

    @classmethod
    def for_method(cls, method: MethodSpec) -> "ConsonanceSpec":
        if not method.consonant:
            return cls(ConsonanceMode.NONE)
        if method.is_boundary_method:
            return cls(ConsonanceMode.BONFERRONI_MONOTONE)
        if method.name is MethodName.MINP:
            raise InputError("consonance is not available for minp")
        return cls(ConsonanceMode.JOINT_K2)

    def check(self, method: MethodSpec, k: int) -> None:
        if self.mode is ConsonanceMode.JOINT_K2:
            if not method.is_region_method or method.name is MethodName.MINP:
                raise InputError(f"joint_k2 consonance does not apply to {method.name.value}")
            if k != 2:
                raise InputError(
                    f"consonant joint-distribution closed tests are only defined for k=2 (k={k})"
                )
        if self.mode is ConsonanceMode.BONFERRONI_MONOTONE and not method.is_boundary_method:
            raise InputError(
                f"bonferroni_monotone consonance does not apply to {method.name.value}"
            )


def consonance_forbidden_block(
    r1: RejectionRegion, r2: RejectionRegion, dist: JointDistribution
) -> List[Tuple[int, ...]]:
    """Points of the two-endpoint support where neither marginal region rejects."""
    if dist.k_eff != 2:
        raise InputError(f"forbidden block needs a two-endpoint support (k={dist.k_eff})")
    if r1.dist.k_eff != 1 or r2.dist.k_eff != 1:
        raise InputError("marginal regions must live on single-endpoint supports")
    keep1 = {t[0] for t in r1.points}
    keep2 = {t[0] for t in r2.points}
    return [p.t for p in dist.points if p.t[0] not in keep1 and p.t[1] not in keep2]


def fisher_forbidden_block(dist: JointDistribution, alpha: Fraction) -> List[Tuple[int, ...]]:
    """Forbidden block built from the level-alpha Fisher regions of both endpoints."""
    regions = []
    for j in range(2):
        c = marginal_tail_table(dist.margins, j).critical_value(alpha)
        single = joint_null_distribution(dist.margins, (j,))
        regions.append(
            RejectionRegion.from_predicate(single, lambda t, c=c: c is not None and t[0] >= c)
        )
    return consonance_forbidden_block(regions[0], regions[1], dist)


def consonant_boundary_caps(
    subset: Sequence[int],
    computed: Mapping[Tuple[int, ...], CriticalBoundaries],
    k: int,
) -> Optional[List[Optional[int]]]:
    """
    Caps for the boundaries of ``subset``: per endpoint, the smallest boundary
    any strict superset uses (an untested endpoint imposes no cap). Every strict
    superset must already be in ``computed``.
    """
    J = tuple(subset)
    if len(J) == k:
        return None
    supersets = _strict_supersets(J, k)
    missing = [S for S in supersets if S not in computed]
    if missing:
        raise InputError(f"traversal order violation: superset {list(missing[0])} of {list(J)} "
                         "has no boundaries yet")
    caps: List[Optional[int]] = []
    for i in J:
        cap: Optional[int] = None
        for S in supersets:
            c = computed[S].c[S.index(i)]
            if c is not None and (cap is None or c < cap):
                cap = c
        caps.append(cap)
    return caps


def _strict_supersets(J: Tuple[int, ...], k: int) -> List[Tuple[int, ...]]:
    base = 0
    for i in J:
        base |= 1 << i
    out = []
    for mask in range(1 << k):
        if mask & base == base and mask != base:
            out.append(tuple(i for i in range(k) if mask >> i & 1))
    return out

