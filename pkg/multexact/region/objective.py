"""
Objectives for rejection regions. All three are linear in the member indicators:

    alpha  f_A(R) = P_H0(R)       (null weight, exact integer)
    area   f_C(R) = |R|
    power  f_P(R) = P_HA(R)       (alternative mass of the distribution)

A lexicographic tail orders ties of the primary objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple, Union

from ..dist import JointDistribution
from ..exceptions import InputError

Number = Union[int, float]


class ObjectiveKind(str, Enum):
    ALPHA = "alpha"
    AREA = "area"
    POWER = "power"


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind
    tail: Tuple[ObjectiveKind, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", ObjectiveKind(self.kind))
        object.__setattr__(self, "tail", tuple(ObjectiveKind(k) for k in self.tail))
        chain = self.chain
        if len(set(chain)) != len(chain):
            raise InputError(f"repeated objective in {[k.value for k in chain]}")

    @classmethod
    def parse(cls, primary: str, tail: Sequence[str] = ()) -> "Objective":
        try:
            return cls(ObjectiveKind(primary), tuple(ObjectiveKind(t) for t in tail))
        except ValueError:
            raise InputError(f"unknown objective in {[primary, *tail]}") from None

    @property
    def chain(self) -> Tuple[ObjectiveKind, ...]:
        return (self.kind,) + self.tail

    @property
    def needs_alternative(self) -> bool:
        return ObjectiveKind.POWER in self.chain

    def check(self, dist: JointDistribution) -> None:
        if self.needs_alternative and not dist.has_alternative:
            raise InputError("power objective requires a distribution with alternative masses")


def point_values(kind: ObjectiveKind, dist: JointDistribution) -> List[Number]:
    """Per-point coefficients w_i with f(R) = sum of w_i over members."""
    if kind is ObjectiveKind.ALPHA:
        return list(dist.weights)
    if kind is ObjectiveKind.AREA:
        return [1] * dist.size
    if not dist.has_alternative:
        raise InputError("power objective requires a distribution with alternative masses")
    return [float(x) for x in dist.alt_masses]
