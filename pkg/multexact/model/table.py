"""
Contingency tables, margins and the projection h from category counts to the
per-endpoint success statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from ..exceptions import InputError
from .categories import collapse_map, n_categories, pattern_matrix

# t_i: treatment-group successes on endpoint i, for i in the tested subset
StatisticVector = Tuple[int, ...]


def _log2_exact(d: int) -> int:
    k = d.bit_length() - 1
    if k < 0 or (1 << k) != d:
        raise InputError(f"vector length {d} is not a power of two")
    return k


def normalize_subset(subset: Optional[Iterable[int]], k: int) -> Tuple[int, ...]:
    """Sorted, de-duplicated endpoint subset; ``None`` means all endpoints."""
    if subset is None:
        return tuple(range(k))
    out = tuple(sorted(set(int(i) for i in subset)))
    if not out:
        raise InputError("endpoint subset must not be empty")
    if out[0] < 0 or out[-1] >= k:
        raise InputError(f"endpoint subset {out} out of range for k={k}")
    return out


@dataclass(frozen=True)
class CrossTable:
    """d x 2 table of joint-outcome counts (treatment, control)."""

    k: int
    counts_trt: Tuple[int, ...]
    counts_ctr: Tuple[int, ...]

    def __post_init__(self):
        d = n_categories(self.k)
        if self.k < 1:
            raise InputError("k must be >= 1")
        if len(self.counts_trt) != d or len(self.counts_ctr) != d:
            raise InputError(f"expected {d} category counts per group for k={self.k}")
        if any(c < 0 for c in self.counts_trt) or any(c < 0 for c in self.counts_ctr):
            raise InputError("counts must be nonnegative")
        object.__setattr__(self, "counts_trt", tuple(int(c) for c in self.counts_trt))
        object.__setattr__(self, "counts_ctr", tuple(int(c) for c in self.counts_ctr))

    @property
    def n_trt(self) -> int:
        return sum(self.counts_trt)

    @property
    def n_ctr(self) -> int:
        return sum(self.counts_ctr)

    @property
    def d(self) -> int:
        return n_categories(self.k)


@dataclass(frozen=True)
class MarginVector:
    """Per-category totals pooled over both groups, with the group sizes."""

    m: Tuple[int, ...]
    n_trt: int
    n_ctr: int

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(c) for c in self.m))
        _log2_exact(len(self.m))
        if any(c < 0 for c in self.m):
            raise InputError("margins must be nonnegative")
        if self.n_trt < 0 or self.n_ctr < 0:
            raise InputError("group sizes must be nonnegative")
        if sum(self.m) != self.n_trt + self.n_ctr:
            raise InputError(
                f"margins sum to {sum(self.m)} but n_trt + n_ctr = {self.n_trt + self.n_ctr}"
            )

    @property
    def k(self) -> int:
        return _log2_exact(len(self.m))

    @property
    def N(self) -> int:
        return self.n_trt + self.n_ctr

    def successes(self, endpoint: int) -> int:
        """Pooled number of successes on one endpoint."""
        pats = pattern_matrix(self.k)
        return sum(c for c, row in zip(self.m, pats) if row[endpoint])


@dataclass(frozen=True)
class CellProbabilities:
    """Joint-outcome probabilities of one group, in storage order."""

    q: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(float(x) for x in self.q))
        _log2_exact(len(self.q))
        if any(x < -1e-12 or x > 1 + 1e-12 for x in self.q):
            raise InputError("cell probabilities must lie in [0, 1]")
        if abs(sum(self.q) - 1.0) > 1e-9:
            raise InputError(f"cell probabilities sum to {sum(self.q)!r}, not 1")

    @property
    def k(self) -> int:
        return _log2_exact(len(self.q))

    def marginal(self, endpoint: int) -> float:
        pats = pattern_matrix(self.k)
        return float(sum(x for x, row in zip(self.q, pats) if row[endpoint]))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def margins(table: CrossTable) -> MarginVector:
    return MarginVector(
        m=tuple(a + b for a, b in zip(table.counts_trt, table.counts_ctr)),
        n_trt=table.n_trt,
        n_ctr=table.n_ctr,
    )


def project(y: Sequence[int], subset: Optional[Iterable[int]] = None) -> StatisticVector:
    """t_i = sum of y over categories with success on endpoint i, for i in subset."""
    k = _log2_exact(len(y))
    J = normalize_subset(subset, k)
    pats = pattern_matrix(k)
    return tuple(int(sum(int(c) for c, row in zip(y, pats) if row[i])) for i in J)


def _collapse(values: Sequence, k: int, J: Tuple[int, ...], zero):
    target = collapse_map(k, J)
    out = [zero] * n_categories(len(J))
    for v, pos in zip(values, target):
        out[pos] = out[pos] + v
    return tuple(out)


def restrict_margins(m: MarginVector, subset: Optional[Iterable[int]]) -> MarginVector:
    """Merge categories that agree on the endpoints in ``subset``."""
    J = normalize_subset(subset, m.k)
    return MarginVector(m=_collapse(m.m, m.k, J, 0), n_trt=m.n_trt, n_ctr=m.n_ctr)


def collapse_table(table: CrossTable, subset: Optional[Iterable[int]]) -> CrossTable:
    J = normalize_subset(subset, table.k)
    return CrossTable(
        k=len(J),
        counts_trt=_collapse(table.counts_trt, table.k, J, 0),
        counts_ctr=_collapse(table.counts_ctr, table.k, J, 0),
    )


def collapse_cells(q: CellProbabilities, subset: Optional[Iterable[int]]) -> CellProbabilities:
    J = normalize_subset(subset, q.k)
    return CellProbabilities(q=_collapse(q.q, q.k, J, 0.0))
