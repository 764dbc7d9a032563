"""
Closed testing over every nonempty subset J of the endpoints.

Subsets are visited by decreasing |J| and lexicographically within a size.
H_i is rejected when every local test of a J containing i rejects; the
adjusted p-value of H_J is the largest local p-value over all J' containing J.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..bonf import CriticalBoundaries, minp_p_value
from ..config import config
from ..dist import fisher_p, joint_null_distribution, marginal_tail_table
from ..exceptions import InputError
from ..model import CrossTable, MarginVector, margins, parse_alpha, project, restrict_margins
from ..region import region_p_value
from .cache import RegionCache
from .consonance import (
    ConsonanceMode,
    ConsonanceSpec,
    consonant_boundary_caps,
    fisher_forbidden_block,
)
from .methods import LocalRule, MethodName, MethodSpec, boundaries_for, fisher_rule, region_rule

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]

JOINT_ASSUMPTION = (
    "joint-distribution local tests assume the joint outcome distribution is "
    "identical in both treatment groups under H_J"
)


@lru_cache(maxsize=None)
def closed_subsets(k: int) -> Tuple[Subset, ...]:
    out: List[Subset] = []
    for size in range(k, 0, -1):
        out.extend(combinations(range(k), size))
    return tuple(out)


@lru_cache(maxsize=None)
def supersets_of(J: Subset, k: int) -> Tuple[Subset, ...]:
    """All J' with J contained in J' (J itself included)."""
    return tuple(S for S in closed_subsets(k) if set(J) <= set(S))


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def _frac(p: Optional[Fraction]) -> Dict:
    if p is None:
        return {"p": None}
    return {"p": float(p), "p_num": str(p.numerator), "p_den": str(p.denominator)}


@dataclass
class SubsetResult:
    subset: Subset
    method: str
    t: Tuple[int, ...]
    locally_rejected: bool
    p_value: Optional[Fraction] = None
    adjusted_p: Optional[Fraction] = None
    closed_rejected: bool = False
    iterations: int = 0
    confirmed_optimal: bool = True
    # t outside the region although the region-based p-value is <= alpha
    p_inconsistent: bool = False
    level: Optional[Fraction] = None
    boundaries: Optional[CriticalBoundaries] = field(default=None, repr=False)

    def dump(self) -> Dict:
        out: Dict = {
            "subset": list(self.subset),
            "method": self.method,
            "t": list(self.t),
            "locally_rejected": self.locally_rejected,
            "closed_rejected": self.closed_rejected,
            "local_p": _frac(self.p_value),
            "adjusted_p": _frac(self.adjusted_p),
            "iterations": self.iterations,
            "confirmed_optimal": self.confirmed_optimal,
            "p_inconsistent": self.p_inconsistent,
        }
        if self.level is not None:
            out["level"] = float(self.level)
        if self.boundaries is not None:
            out["boundaries"] = self.boundaries.dump()["boundaries"]
        return out


@dataclass
class ElementaryResult:
    endpoint: int
    adjusted_p: Optional[Fraction]
    rejected: bool


@dataclass
class ClosedTestReport:
    method: str
    alpha: Fraction
    consonance: ConsonanceMode
    k: int
    subsets: List[SubsetResult]
    elementary: List[ElementaryResult]
    assumption: Optional[str] = None

    def subset(self, J: Sequence[int]) -> SubsetResult:
        key = tuple(sorted(J))
        for s in self.subsets:
            if s.subset == key:
                return s
        raise KeyError(key)

    @property
    def global_result(self) -> SubsetResult:
        return self.subsets[0]

    @property
    def global_adjusted_p(self) -> Optional[Fraction]:
        return self.global_result.adjusted_p

    @property
    def global_rejected(self) -> bool:
        return self.global_result.closed_rejected

    @property
    def rejected(self) -> List[int]:
        return [e.endpoint for e in self.elementary if e.rejected]

    @property
    def confirmed_optimal(self) -> bool:
        return all(s.confirmed_optimal for s in self.subsets)

    @property
    def iterations(self) -> int:
        return sum(s.iterations for s in self.subsets)

    def dump(self) -> Dict:
        return {
            "method": self.method,
            "alpha": float(self.alpha),
            "consonance": self.consonance.value,
            "k": self.k,
            "assumption": self.assumption,
            "confirmed_optimal": self.confirmed_optimal,
            "global": {"rejected": self.global_rejected, **_frac(self.global_adjusted_p)},
            "elementary": [
                {"endpoint": e.endpoint, "rejected": e.rejected, **_frac(e.adjusted_p)}
                for e in self.elementary
            ],
            "subsets": [s.dump() for s in self.subsets],
        }


# ---------------------------------------------------------------------------
# Local rules
# ---------------------------------------------------------------------------

def _rule_key(
    method: MethodSpec, alpha: Fraction, mode: ConsonanceMode, m: MarginVector, J: Subset
):
    if mode is ConsonanceMode.BONFERRONI_MONOTONE:
        margin_key = m.m
    else:
        margin_key = restrict_margins(m, J).m
    return (method.cache_key(alpha), mode, J, margin_key, m.n_trt, m.n_ctr)


def _build_rule(
    method: MethodSpec,
    m: MarginVector,
    J: Subset,
    alpha: Fraction,
    mode: ConsonanceMode,
    computed: Dict[Subset, CriticalBoundaries],
) -> LocalRule:
    if len(J) == 1:
        return fisher_rule(m, J[0], alpha)
    if method.is_region_method:
        forbidden = None
        if mode is ConsonanceMode.JOINT_K2:
            forbidden = fisher_forbidden_block(joint_null_distribution(m, J), alpha)
        return region_rule(method, m, J, alpha, forbidden)
    caps = None
    if mode is ConsonanceMode.BONFERRONI_MONOTONE:
        caps = consonant_boundary_caps(J, computed, m.k)
    return LocalRule(J, boundaries=boundaries_for(method, m, J, alpha, caps))


def closed_rules(
    method: MethodSpec,
    m: MarginVector,
    alpha: Fraction,
    consonance: ConsonanceSpec,
    cache: Optional[RegionCache] = None,
    threads: Optional[int] = None,
) -> Dict[Subset, LocalRule]:
    """Local rules for every subset; subsets of equal size are built concurrently."""
    k = m.k
    threads = config.threads if threads is None else threads
    mode = consonance.mode
    rules: Dict[Subset, LocalRule] = {}
    computed: Dict[Subset, CriticalBoundaries] = {}

    def build(J: Subset) -> LocalRule:
        make = partial(_build_rule, method, m, J, alpha, mode, computed)
        if cache is None:
            return make()
        return cache.get_or_build(_rule_key(method, alpha, mode, m, J), make)

    for size in range(k, 0, -1):
        level = list(combinations(range(k), size))
        if threads > 1 and len(level) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                built = list(pool.map(build, level))
        else:
            built = [build(J) for J in level]
        # caps for the next size only read this barrier's results
        for J, rule in zip(level, built):
            rules[J] = rule
            if rule.boundaries is not None:
                computed[J] = rule.boundaries
    return rules


# ---------------------------------------------------------------------------
# Local p-values
# ---------------------------------------------------------------------------

def bonferroni_level_grid(m: MarginVector) -> List[Fraction]:
    """
    Every level at which a Bonferroni-family decision can change: achievable
    sums of marginal tail probabilities and their multiples j*S_i(c).
    """
    tails = [marginal_tail_table(m, i) for i in range(m.k)]
    total = tails[0].total
    sums = {0}
    for tail in tails:
        weights = {tail.weight(c) for c in range(tail.lo, tail.hi + 1)}
        sums |= {s + w for s in sums for w in weights if s + w <= total}
    for tail in tails:
        for c in range(tail.lo, tail.hi + 1):
            for j in range(1, m.k + 1):
                if tail.weight(c) * j <= total:
                    sums.add(tail.weight(c) * j)
    sums.discard(0)
    return sorted(Fraction(s, total) for s in sums)


def boundary_p_values(
    method: MethodSpec,
    m: MarginVector,
    t: Sequence[int],
    consonance: ConsonanceSpec,
) -> Dict[Subset, Fraction]:
    """
    p(J) = the smallest level alpha' at which the alpha'-version of the method
    rejects H_J, for every |J| >= 2 (1 if it never does).
    """
    k = m.k
    pending = [J for J in closed_subsets(k) if len(J) > 1]
    p: Dict[Subset, Fraction] = {}
    for level in bonferroni_level_grid(m):
        if not pending:
            break
        computed: Dict[Subset, CriticalBoundaries] = {}
        for J in closed_subsets(k):
            if len(J) == 1:
                break
            caps = None
            if consonance.mode is ConsonanceMode.BONFERRONI_MONOTONE:
                caps = consonant_boundary_caps(J, computed, k)
            b = boundaries_for(method, m, J, level, caps)
            computed[J] = b
            if J in pending and b.rejects(tuple(t[i] for i in J)):
                p[J] = level
                pending.remove(J)
    for J in pending:
        p[J] = Fraction(1)
    return p


def _local_p(
    method: MethodSpec, m: MarginVector, rule: LocalRule, t_J: Tuple[int, ...], alpha: Fraction
) -> Tuple[Fraction, bool]:
    J = rule.subset
    if len(J) == 1:
        return fisher_p(m, J[0], t_J[0]), False
    if method.name is MethodName.MINP:
        return minp_p_value(joint_null_distribution(m, J), t_J), False
    res = region_p_value(rule.region, t_J)
    return res.p, res.inconsistent_at(alpha)


# ---------------------------------------------------------------------------
# Procedure
# ---------------------------------------------------------------------------

def _check(table_k: int, method: MethodSpec, consonance: ConsonanceSpec) -> None:
    if method.alt is not None and method.alt.k != table_k:
        raise InputError(f"alternative has {method.alt.k} endpoints, table has {table_k}")
    consonance.check(method, table_k)


def closed_decisions(
    method: MethodSpec,
    m: MarginVector,
    t: Sequence[int],
    alpha: Fraction,
    consonance: ConsonanceSpec,
    cache: Optional[RegionCache] = None,
) -> Tuple[Dict[Subset, bool], List[bool], Dict[Subset, LocalRule]]:
    """Local and elementary rejections without p-values; the power studies use this."""
    rules = closed_rules(method, m, alpha, consonance, cache)
    local, elementary = apply_rules(rules, t, m.k)
    return local, elementary, rules


def apply_rules(
    rules: Dict[Subset, LocalRule], t: Sequence[int], k: int
) -> Tuple[Dict[Subset, bool], List[bool]]:
    local = {J: rule.rejects(tuple(t[i] for i in J)) for J, rule in rules.items()}
    elementary = [all(local[S] for S in supersets_of((i,), k)) for i in range(k)]
    return local, elementary


def closed_test(
    table: CrossTable,
    method: MethodSpec,
    alpha=None,
    consonance: Optional[ConsonanceSpec] = None,
    with_p_values: bool = True,
    cache: Optional[RegionCache] = None,
) -> ClosedTestReport:
    alpha = parse_alpha(config.alpha if alpha is None else alpha)
    consonance = consonance or ConsonanceSpec.for_method(method)
    k = table.k
    _check(k, method, consonance)
    m = margins(table)
    t = project(table.counts_trt)

    local, elementary_flags, rules = closed_decisions(method, m, t, alpha, consonance, cache)

    p_local: Dict[Subset, Fraction] = {}
    inconsistent: Dict[Subset, bool] = {}
    if with_p_values:
        if method.is_boundary_method and k > 1:
            p_local.update(boundary_p_values(method, m, t, consonance))
        for J, rule in rules.items():
            if J in p_local:
                continue
            p_local[J], inconsistent[J] = _local_p(
                method, m, rule, tuple(t[i] for i in J), alpha
            )

    results: List[SubsetResult] = []
    for J in closed_subsets(k):
        rule = rules[J]
        adjusted = None
        if with_p_values:
            adjusted = max(p_local[S] for S in supersets_of(J, k))
        results.append(SubsetResult(
            subset=J,
            method="fisher" if len(J) == 1 else method.name.value,
            t=tuple(t[i] for i in J),
            locally_rejected=local[J],
            p_value=p_local.get(J),
            adjusted_p=adjusted,
            closed_rejected=all(local[S] for S in supersets_of(J, k)),
            iterations=rule.iterations,
            confirmed_optimal=rule.confirmed_optimal,
            p_inconsistent=inconsistent.get(J, False),
            level=rule.region.level if rule.region is not None else rule.boundaries.level_bound,
            boundaries=rule.boundaries,
        ))
        if not rule.confirmed_optimal:
            logger.warning("subset %s: iteration cap reached, region not confirmed optimal", J)

    elementary = [
        ElementaryResult(
            endpoint=i,
            adjusted_p=next(r.adjusted_p for r in results if r.subset == (i,)),
            rejected=elementary_flags[i],
        )
        for i in range(k)
    ]
    report = ClosedTestReport(
        method=method.label,
        alpha=alpha,
        consonance=consonance.mode,
        k=k,
        subsets=results,
        elementary=elementary,
        assumption=JOINT_ASSUMPTION if method.is_region_method and k > 1 else None,
    )
    logger.info(
        "closed test %s at alpha=%s: rejected endpoints %s", method.label, alpha, report.rejected
    )
    return report
