"""
Critical boundaries for the marginal (Bonferroni-type) family.

A boundary vector c rejects the intersection hypothesis when t_i >= c_i for
some endpoint i; c_i = None stands for +infinity (endpoint untested). All level
bookkeeping uses the integer tail counts over the common denominator
C(N, n_trt), so sum_i S_i(c_i) <= alpha is checked exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..dist import (
    JointDistribution,
    MarginalTail,
    OddsVector,
    joint_alt_distribution,
    marginal_tail_table,
)
from ..exceptions import InputError
from ..model import MarginVector, normalize_subset
from ..model.levels import level_budget
from ..region import RejectionRegion

logger = logging.getLogger(__name__)

Boundary = Optional[int]


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AltTail:
    """P_HA(T_i >= c) for one endpoint under a marginal alternative."""

    lo: int
    hi: int
    sf_values: Tuple[float, ...]     # sf_values[c - lo]

    def sf(self, c: Boundary) -> float:
        if c is None or c > self.hi:
            return 0.0
        if c <= self.lo:
            return 1.0
        return self.sf_values[c - self.lo]


@dataclass(frozen=True)
class CriticalBoundaries:
    c: Tuple[Boundary, ...]
    subset: Tuple[int, ...]
    tails: Tuple[MarginalTail, ...] = field(repr=False, compare=False)
    method: str = ""

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(tail.weight(c) for tail, c in zip(self.tails, self.c))

    @property
    def level_contributions(self) -> Tuple[Fraction, ...]:
        return tuple(tail.sf(c) for tail, c in zip(self.tails, self.c))

    @property
    def level_bound(self) -> Fraction:
        return sum(self.level_contributions, Fraction(0))

    @property
    def tested(self) -> Tuple[bool, ...]:
        return tuple(c is not None for c in self.c)

    def within(self, alpha: Fraction) -> bool:
        total = self.tails[0].total if self.tails else 1
        return sum(self.weights) <= level_budget(total, alpha)

    def rejects(self, t: Sequence[int]) -> bool:
        return any(c is not None and ti >= c for ti, c in zip(t, self.c))

    def dump(self) -> Dict:
        rows = []
        for endpoint, c, contrib in zip(self.subset, self.c, self.level_contributions):
            rows.append({
                "endpoint": endpoint,
                "c": c if c is not None else "untested",
                "tail_num": str(contrib.numerator),
                "tail_den": str(contrib.denominator),
                "tested": c is not None,
            })
        return {"method": self.method, "boundaries": rows}


class BonfObjectiveKind(str, Enum):
    ALPHA_SUM = "alpha-sum"
    POWER_SUM = "power-sum"


@dataclass(frozen=True)
class BonfObjective:
    kind: BonfObjectiveKind = BonfObjectiveKind.ALPHA_SUM
    alt_tails: Optional[Tuple[AltTail, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", BonfObjectiveKind(self.kind))
        if self.kind is BonfObjectiveKind.POWER_SUM and self.alt_tails is None:
            raise InputError("power-sum objective needs per-endpoint alternative tails")

    def term(self, pos: int, tail: MarginalTail, c: Boundary) -> Union[int, float]:
        """Contribution of one endpoint to g: integer tail weight or alternative tail."""
        if self.kind is BonfObjectiveKind.ALPHA_SUM:
            return tail.weight(c)
        return self.alt_tails[pos].sf(c)


ALPHA_SUM = BonfObjective()


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def marginal_tails(
    m: MarginVector, subset=None
) -> Tuple[Tuple[int, ...], Tuple[MarginalTail, ...]]:
    J = normalize_subset(subset, m.k)
    return J, tuple(marginal_tail_table(m, i) for i in J)


def alt_tail(m: MarginVector, endpoint: int, p_trt: float, p_ctr: float) -> AltTail:
    """Upper tail of T_i under the non-central hypergeometric law with marginal rates."""
    if not (0 < p_trt < 1 and 0 < p_ctr < 1):
        raise InputError("marginal alternative rates must lie strictly between 0 and 1")
    odds = OddsVector((p_trt / p_ctr, (1 - p_trt) / (1 - p_ctr)))
    dist = joint_alt_distribution(m, odds, subset=(endpoint,))
    tail = marginal_tail_table(m, endpoint)
    mass = {p.t[0]: p.alt_mass for p in dist.points}
    values = []
    acc = 0.0
    for c in range(tail.hi, tail.lo - 1, -1):
        acc += mass.get(c, 0.0)
        values.append(min(acc, 1.0))
    values.reverse()
    return AltTail(lo=tail.lo, hi=tail.hi, sf_values=tuple(values))


def power_sum_objective(
    m: MarginVector, p_trt: Sequence[float], p_ctr: Sequence[float], subset=None
) -> BonfObjective:
    J = normalize_subset(subset, m.k)
    tails = tuple(alt_tail(m, i, p_trt[i], p_ctr[i]) for i in J)
    return BonfObjective(BonfObjectiveKind.POWER_SUM, tails)


def _numeric(c: Boundary, tail: MarginalTail) -> int:
    return tail.hi + 1 if c is None else c


def _make(J, tails, c, method) -> CriticalBoundaries:
    return CriticalBoundaries(c=tuple(c), subset=J, tails=tails, method=method)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def unweighted(m: MarginVector, alpha: Fraction, subset=None) -> CriticalBoundaries:
    J, tails = marginal_tails(m, subset)
    share = alpha / len(J)
    return _make(J, tails, [t.critical_value(share) for t in tails], "bonf-unweighted")


def _tarone_c(tails: Sequence[MarginalTail], alpha: Fraction) -> List[Boundary]:
    k = len(tails)
    mins = [t.min_attainable for t in tails]
    # smallest retained count m with #{i : min_i <= alpha / m} <= m
    count = k
    for m_ in range(1, k + 1):
        if sum(1 for p in mins if p <= alpha / m_) <= m_:
            count = m_
            break
    share = alpha / count
    return [t.critical_value(share) if p <= share else None for t, p in zip(tails, mins)]


def tarone(m: MarginVector, alpha: Fraction, subset=None) -> CriticalBoundaries:
    J, tails = marginal_tails(m, subset)
    return _make(J, tails, _tarone_c(tails, alpha), "bonf-tarone")


def _tarone_grid(tails: Sequence[MarginalTail], alpha: Fraction) -> List[Fraction]:
    """Levels at which a Tarone decision can change, up to alpha."""
    k = len(tails)
    grid = {alpha}
    for tail in tails:
        for c in range(tail.lo, tail.hi + 1):
            s = tail.sf(c)
            for m_ in range(1, k + 1):
                if 0 < s * m_ <= alpha:
                    grid.add(s * m_)
    return sorted(grid)


def hkt(m: MarginVector, alpha: Fraction, subset=None) -> CriticalBoundaries:
    """Reject H_i whenever Tarone's procedure rejects it at some level alpha' <= alpha."""
    J, tails = marginal_tails(m, subset)
    best: List[Boundary] = [None] * len(J)
    for level in _tarone_grid(tails, alpha):
        for i, c in enumerate(_tarone_c(tails, level)):
            if c is not None and (best[i] is None or c < best[i]):
                best[i] = c
    return _make(J, tails, best, "bonf-hkt")


def westfall_troendle(m: MarginVector, alpha: Fraction, subset=None) -> CriticalBoundaries:
    """Common threshold c, as small as possible with sum_i S_i(c) <= alpha."""
    J, tails = marginal_tails(m, subset)
    budget = level_budget(tails[0].total, alpha)
    lo = min(t.lo for t in tails)
    hi = max(t.hi for t in tails)
    for c in range(lo, hi + 2):
        if sum(t.weight(c) for t in tails) <= budget:
            return _make(J, tails, [c if c <= t.hi else None for t in tails], "bonf-wt")
    raise AssertionError("the all-untested vector always satisfies the level")


def _candidates(tail: MarginalTail, alpha: Fraction, cap: Boundary, capped: bool) -> List[Boundary]:
    out: List[Boundary] = []
    if not capped:
        out.append(None)
    out.extend(
        c for c in reversed(tail.candidates(alpha)) if not capped or c <= cap
    )
    return out      # ascending weight: untested first, then decreasing c


def optimize_boundaries(
    m: MarginVector,
    objective: BonfObjective = ALPHA_SUM,
    alpha: Fraction = Fraction(1, 40),
    upper_limits: Optional[Sequence[Boundary]] = None,
    subset=None,
) -> CriticalBoundaries:
    """
    Exhaustive search over prod_i (V_i^alpha + {inf}) maximizing g subject to the
    exact level constraint and optional caps c_i <= upper_limits_i. A cap of
    None leaves the endpoint unconstrained. Ties: smallest sum of c, then the
    lexicographically smallest vector (untested counts as hi_i + 1).
    """
    J, tails = marginal_tails(m, subset)
    k = len(J)
    limits = list(upper_limits) if upper_limits is not None else [None] * k
    if len(limits) != k:
        raise InputError(f"expected {k} upper limits, got {len(limits)}")
    budget = level_budget(tails[0].total, alpha)
    cands = [
        _candidates(tail, alpha, cap, cap is not None) for tail, cap in zip(tails, limits)
    ]

    best_key = None
    best_c: Optional[List[Boundary]] = None
    current: List[Boundary] = [None] * k

    def rec(pos: int, used: int, g):
        nonlocal best_key, best_c
        if pos == k:
            numeric = [_numeric(c, t) for c, t in zip(current, tails)]
            key = (g, -sum(numeric), tuple(-x for x in numeric))
            if best_key is None or key > best_key:
                best_key = key
                best_c = list(current)
            return
        tail = tails[pos]
        for c in cands[pos]:
            w = tail.weight(c)
            if used + w > budget:
                break
            current[pos] = c
            rec(pos + 1, used + w, g + objective.term(pos, tail, c))
        current[pos] = None

    rec(0, 0, 0)
    if best_c is None:
        raise InputError("no boundary vector satisfies the caps at this level")
    name = "bonf-optimal-alpha" if objective.kind is BonfObjectiveKind.ALPHA_SUM else (
        "bonf-optimal-power"
    )
    return _make(J, tails, best_c, name)


def greedy_boundaries(
    m: MarginVector,
    alpha: Fraction,
    operator: str = "argmin",
    objective: BonfObjective = ALPHA_SUM,
    subset=None,
) -> CriticalBoundaries:
    """Lower one boundary by one support step at a time while the level allows it."""
    if operator not in ("argmin", "argmax"):
        raise InputError(f"unknown greedy operator {operator!r}")
    J, tails = marginal_tails(m, subset)
    budget = level_budget(tails[0].total, alpha)
    c: List[Boundary] = [None] * len(J)
    used = 0
    while True:
        pick = -1
        best = None
        for i, tail in enumerate(tails):
            nxt = tail.hi if c[i] is None else c[i] - 1
            if nxt < tail.lo:
                continue
            extra = tail.weight(nxt) - tail.weight(c[i])
            if used + extra > budget:
                continue
            inc = objective.term(i, tail, nxt) - objective.term(i, tail, c[i])
            if best is None or (inc < best if operator == "argmin" else inc > best):
                best = inc
                pick = i
        if pick < 0:
            break
        tail = tails[pick]
        nxt = tail.hi if c[pick] is None else c[pick] - 1
        used += tail.weight(nxt) - tail.weight(c[pick])
        c[pick] = nxt
    return _make(J, tails, c, "bonf-greedy")


def boundary_region(boundaries: CriticalBoundaries, dist: JointDistribution) -> RejectionRegion:
    """The region {t : t_i >= c_i for some i} on a joint distribution over the same subset."""
    if tuple(dist.subset) != tuple(boundaries.subset):
        raise InputError("boundaries and distribution cover different endpoints")
    return RejectionRegion.from_predicate(dist, boundaries.rejects)

