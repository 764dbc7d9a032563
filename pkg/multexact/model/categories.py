"""
Outcome categories of k binary endpoints.

A category's index is the integer whose binary digits are (s_1, ..., s_k), with
s_1 the most significant bit. Count and probability vectors are stored in
descending index order, so position 0 is the all-success pattern and the last
position is the all-failure pattern; for k = 2 the storage order is 11, 10, 01, 00.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import InputError


@dataclass(frozen=True)
class OutcomeCategory:
    index: int
    k: int

    @property
    def pattern(self) -> Tuple[int, ...]:
        return pattern_of(self.index, self.k)

    @property
    def label(self) -> str:
        return "".join(str(s) for s in self.pattern)

    @property
    def position(self) -> int:
        """Slot of this category in a stored count vector."""
        return (1 << self.k) - 1 - self.index


def n_categories(k: int) -> int:
    return 1 << k


def pattern_of(index: int, k: int) -> Tuple[int, ...]:
    if not 0 <= index < (1 << k):
        raise InputError(f"category index {index} out of range for k={k}")
    return tuple((index >> (k - 1 - i)) & 1 for i in range(k))


def index_of(pattern: Sequence[int]) -> int:
    idx = 0
    for s in pattern:
        if s not in (0, 1):
            raise InputError(f"outcome must be 0 or 1, got {s!r}")
        idx = (idx << 1) | int(s)
    return idx


def position_of(pattern: Sequence[int]) -> int:
    return (1 << len(pattern)) - 1 - index_of(pattern)


def parse_pattern(label: str) -> Tuple[int, ...]:
    """'101' -> (1, 0, 1)."""
    label = label.strip()
    if not label or any(ch not in "01" for ch in label):
        raise InputError(f"invalid category pattern {label!r}")
    return tuple(int(ch) for ch in label)


def categories(k: int) -> List[OutcomeCategory]:
    """All 2^k categories in storage order."""
    d = n_categories(k)
    return [OutcomeCategory(index=d - 1 - p, k=k) for p in range(d)]


@lru_cache(maxsize=None)
def _pattern_matrix(k: int) -> np.ndarray:
    d = n_categories(k)
    mat = np.array([pattern_of(d - 1 - p, k) for p in range(d)], dtype=np.int64)
    mat.setflags(write=False)
    return mat


def pattern_matrix(k: int) -> np.ndarray:
    """(d, k) 0/1 matrix; row p is the pattern stored at position p."""
    return _pattern_matrix(k)


@lru_cache(maxsize=None)
def collapse_map(k: int, subset: Tuple[int, ...]) -> Tuple[int, ...]:
    """
    For each stored position of the full k-endpoint layout, the position of the
    merged category when only the endpoints in ``subset`` are retained.
    """
    d = n_categories(k)
    out = []
    for p in range(d):
        pattern = pattern_of(d - 1 - p, k)
        out.append(position_of([pattern[i] for i in subset]))
    return tuple(out)
