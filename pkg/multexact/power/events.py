"""Closed-test events and their (weighted) tallies."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ClosedEvents:
    global_: bool
    any_: bool
    all_: bool
    endpoints: Tuple[bool, ...]

    @classmethod
    def from_decisions(
        cls, local: Dict[Tuple[int, ...], bool], elementary: Sequence[bool]
    ) -> "ClosedEvents":
        k = len(elementary)
        return cls(
            global_=local[tuple(range(k))],
            any_=any(elementary),
            all_=all(elementary),
            endpoints=tuple(bool(x) for x in elementary),
        )


@dataclass
class EventTally:
    """Probability-weighted event counts; also used with unit weights for simulations."""

    k: int
    weight: float = 0.0
    global_: float = 0.0
    any_: float = 0.0
    all_: float = 0.0
    endpoints: List[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.endpoints:
            self.endpoints = [0.0] * self.k

    def add(self, events: ClosedEvents, w: float = 1.0) -> None:
        self.weight += w
        self.global_ += w * events.global_
        self.any_ += w * events.any_
        self.all_ += w * events.all_
        for i, hit in enumerate(events.endpoints):
            self.endpoints[i] += w * hit

    def merge(self, other: "EventTally") -> None:
        self.weight += other.weight
        self.global_ += other.global_
        self.any_ += other.any_
        self.all_ += other.all_
        for i, x in enumerate(other.endpoints):
            self.endpoints[i] += x

    def probabilities(self) -> Dict[str, object]:
        w = self.weight or 1.0
        return {
            "global": self.global_ / w,
            "any": self.any_ / w,
            "all": self.all_ / w,
            "endpoints": [x / w for x in self.endpoints],
        }


def weighted_quantile(values: Sequence[float], weights: Sequence[float], q: float) -> float:
    """Smallest value whose cumulative weight reaches q of the total."""
    if not len(values):
        return 0.0
    v = np.asarray(values, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    order = np.argsort(v, kind="stable")
    cum = np.cumsum(w[order])
    idx = int(np.searchsorted(cum, q * cum[-1], side="left"))
    return float(v[order][min(idx, len(v) - 1)])
