"""
Componentwise partial order on a support, as bitsets over the canonical order.

Bit j of ``up_masks[i]`` is set iff t_j >= t_i componentwise; ``down_masks`` is
the transpose. Python ints serve as arbitrary-width bitsets.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np

from ..dist import JointDistribution

_CACHE: "weakref.WeakKeyDictionary[JointDistribution, DominanceStructure]" = (
    weakref.WeakKeyDictionary()
)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    out = 0
    for i in indices:
        out |= 1 << int(i)
    return out


def _row_masks(matrix: np.ndarray) -> Tuple[int, ...]:
    # packbits with little bit order puts column j at bit j of the int
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class DominanceStructure:
    up_masks: Tuple[int, ...]
    down_masks: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.up_masks)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def up_set(self, i: int) -> List[int]:
        return list(iter_bits(self.up_masks[i]))

    def down_set(self, i: int) -> List[int]:
        return list(iter_bits(self.down_masks[i]))

    def strict_up(self, i: int) -> int:
        return self.up_masks[i] & ~(1 << i)

    def strict_down(self, i: int) -> int:
        return self.down_masks[i] & ~(1 << i)

    def is_up_closed(self, mask: int) -> bool:
        return all((self.up_masks[i] & ~mask) == 0 for i in iter_bits(mask))

    def up_closure(self, mask: int) -> int:
        out = mask
        for i in iter_bits(mask):
            out |= self.up_masks[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = mask
        for i in iter_bits(mask):
            out |= self.down_masks[i]
        return out


def dominance(dist: JointDistribution) -> DominanceStructure:
    cached = _CACHE.get(dist)
    if cached is not None:
        return cached
    T = dist.statistics
    if dist.size == 0:
        structure = DominanceStructure((), ())
    else:
        ge = np.all(T[None, :, :] >= T[:, None, :], axis=2)    # ge[i, j]: t_j >= t_i
        structure = DominanceStructure(_row_masks(ge), _row_masks(ge.T))
    _CACHE[dist] = structure
    return structure
