"""
Method descriptors and the local level-alpha test each method builds for one
intersection hypothesis H_J.

Method grammar:
    optimal-alpha | optimal-area | optimal-power | greedy | minp
    bonf-unweighted | bonf-tarone | bonf-hkt | bonf-wt
    bonf-optimal-alpha | bonf-optimal-power | bonf-greedy
modified by a consonance flag, an assumed alternative (``trt=..;ctr=..;rho=..``)
and a lexicographic objective tail (``area,power``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from ..bonf import (
    ALPHA_SUM,
    CriticalBoundaries,
    greedy_boundaries,
    hkt,
    minp_region,
    optimize_boundaries,
    power_sum_objective,
    tarone,
    unweighted,
    westfall_troendle,
)
from ..dist import JointDistribution, OddsVector, joint_alt_distribution, joint_null_distribution
from ..dist.hypergeom import marginal_tail_table
from ..exceptions import InputError
from ..model import CellProbabilities, MarginVector, collapse_cells
from ..region import Objective, ObjectiveKind, RejectionRegion
from ..search import branch_and_bound, greedy_region, small_prob_split


class MethodName(str, Enum):
    OPTIMAL_ALPHA = "optimal-alpha"
    OPTIMAL_AREA = "optimal-area"
    OPTIMAL_POWER = "optimal-power"
    GREEDY = "greedy"
    MINP = "minp"
    BONF_UNWEIGHTED = "bonf-unweighted"
    BONF_TARONE = "bonf-tarone"
    BONF_HKT = "bonf-hkt"
    BONF_WT = "bonf-wt"
    BONF_OPTIMAL_ALPHA = "bonf-optimal-alpha"
    BONF_OPTIMAL_POWER = "bonf-optimal-power"
    BONF_GREEDY = "bonf-greedy"


OPTIMAL_METHODS = {
    MethodName.OPTIMAL_ALPHA: ObjectiveKind.ALPHA,
    MethodName.OPTIMAL_AREA: ObjectiveKind.AREA,
    MethodName.OPTIMAL_POWER: ObjectiveKind.POWER,
}
REGION_METHODS = set(OPTIMAL_METHODS) | {MethodName.GREEDY, MethodName.MINP}


@dataclass(frozen=True)
class AltSpec:
    """Assumed alternative: marginal success rates per group and a common correlation."""

    p_trt: Tuple[float, ...]
    p_ctr: Tuple[float, ...]
    rho: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p_trt", tuple(float(p) for p in self.p_trt))
        object.__setattr__(self, "p_ctr", tuple(float(p) for p in self.p_ctr))
        if len(self.p_trt) != len(self.p_ctr) or not self.p_trt:
            raise InputError("alternative needs one rate per endpoint in each group")
        if any(not 0 < p < 1 for p in self.p_trt + self.p_ctr):
            raise InputError("alternative rates must lie strictly between 0 and 1")

    @property
    def k(self) -> int:
        return len(self.p_trt)

    @classmethod
    def parse(cls, text: str) -> "AltSpec":
        """``trt=0.9,0.9;ctr=0.75,0.75;rho=0``"""
        fields: Dict[str, str] = {}
        for part in text.split(";"):
            if not part.strip():
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise InputError(f"malformed alternative component {part!r}")
            fields[key.strip().lower()] = value.strip()
        try:
            p_trt = [float(x) for x in fields["trt"].split(",")]
            p_ctr = [float(x) for x in fields["ctr"].split(",")]
            rho = float(fields.get("rho", "0"))
        except (KeyError, ValueError):
            raise InputError(f"alternative must look like 'trt=..;ctr=..;rho=..', got {text!r}") \
                from None
        return cls(tuple(p_trt), tuple(p_ctr), rho)

    def describe(self) -> str:
        def fmt(ps):
            return ",".join(f"{p:g}" for p in ps)

        return f"trt={fmt(self.p_trt)};ctr={fmt(self.p_ctr)};rho={self.rho:g}"

    @cached_property
    def cells(self) -> Tuple[CellProbabilities, CellProbabilities]:
        from ..power.cells import cells_from_marginals

        return (
            cells_from_marginals(self.p_trt, self.rho),
            cells_from_marginals(self.p_ctr, self.rho),
        )

    def odds(self, subset: Sequence[int]) -> OddsVector:
        """Odds of the categories collapsed onto ``subset``."""
        q_trt, q_ctr = self.cells
        return OddsVector.from_cells(collapse_cells(q_trt, subset), collapse_cells(q_ctr, subset))


@dataclass(frozen=True)
class MethodSpec:
    name: MethodName
    consonant: bool = False
    alt: Optional[AltSpec] = None
    lex: Tuple[ObjectiveKind, ...] = ()
    max_iter: Optional[int] = None
    small_prob_c: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "name", MethodName(self.name))
        object.__setattr__(self, "lex", tuple(ObjectiveKind(x) for x in self.lex))
        if self.lex and self.name not in OPTIMAL_METHODS:
            raise InputError("lexicographic objectives apply to optimal-* methods only")
        if self.needs_alternative and self.alt is None:
            raise InputError(f"method {self.name.value} needs an assumed alternative (--alt)")

    @classmethod
    def parse(
        cls,
        name: str,
        consonant: bool = False,
        alt: Optional[str] = None,
        lex: Optional[str] = None,
        max_iter: Optional[int] = None,
        small_prob_c: Optional[float] = None,
    ) -> "MethodSpec":
        try:
            method = MethodName(name.strip().lower())
        except ValueError:
            raise InputError(f"unknown method {name!r}") from None
        tail = tuple(x.strip() for x in lex.split(",") if x.strip()) if lex else ()
        try:
            lex_kinds = tuple(ObjectiveKind(x) for x in tail)
        except ValueError:
            raise InputError(f"unknown objective in --lex {lex!r}") from None
        return cls(
            name=method,
            consonant=consonant,
            alt=AltSpec.parse(alt) if alt else None,
            lex=lex_kinds,
            max_iter=max_iter,
            small_prob_c=small_prob_c,
        )

    @property
    def is_region_method(self) -> bool:
        return self.name in REGION_METHODS

    @property
    def is_boundary_method(self) -> bool:
        return not self.is_region_method

    @property
    def objective(self) -> Optional[Objective]:
        kind = OPTIMAL_METHODS.get(self.name)
        return None if kind is None else Objective(kind, self.lex)

    @property
    def needs_alternative(self) -> bool:
        return (
            self.name in (MethodName.OPTIMAL_POWER, MethodName.BONF_OPTIMAL_POWER)
            or ObjectiveKind.POWER in self.lex
        )

    @property
    def label(self) -> str:
        out = self.name.value
        if self.lex:
            out += "+" + ",".join(k.value for k in self.lex)
        if self.consonant:
            out = "consonant " + out
        if self.alt is not None:
            out += f" [{self.alt.describe()}]"
        if self.small_prob_c:
            out += f" (c={self.small_prob_c:g})"
        return out

    def cache_key(self, alpha: Fraction) -> tuple:
        return (self.name, self.consonant, self.alt, self.lex, self.max_iter,
                self.small_prob_c, alpha)


# ---------------------------------------------------------------------------
# Local tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalRule:
    """A level-alpha rejection rule for one subset: a region or boundaries."""

    subset: Tuple[int, ...]
    region: Optional[RejectionRegion] = field(default=None, repr=False)
    boundaries: Optional[CriticalBoundaries] = None
    iterations: int = 0
    confirmed_optimal: bool = True

    @cached_property
    def member_set(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(self.region.points) if self.region is not None else frozenset()

    def rejects(self, t: Sequence[int]) -> bool:
        if self.boundaries is not None:
            return self.boundaries.rejects(t)
        return tuple(t) in self.member_set


def fisher_rule(m: MarginVector, endpoint: int, alpha: Fraction) -> LocalRule:
    """Every method reduces to Fisher's exact test on a single endpoint."""
    c = marginal_tail_table(m, endpoint).critical_value(alpha)
    dist = joint_null_distribution(m, (endpoint,))
    region = RejectionRegion.from_predicate(dist, lambda t: c is not None and t[0] >= c)
    return LocalRule(subset=(endpoint,), region=region)


def subset_distribution(
    method: MethodSpec, m: MarginVector, subset: Tuple[int, ...]
) -> JointDistribution:
    if method.alt is not None:
        return joint_alt_distribution(m, method.alt.odds(subset), subset)
    return joint_null_distribution(m, subset)


def region_rule(
    method: MethodSpec,
    m: MarginVector,
    subset: Tuple[int, ...],
    alpha: Fraction,
    forbidden: Optional[Sequence[Tuple[int, ...]]] = None,
) -> LocalRule:
    """Joint-distribution local test; ``forbidden`` lists statistic vectors."""
    if len(subset) == 1:
        return fisher_rule(m, subset[0], alpha)
    dist = subset_distribution(method, m, subset)
    forbidden_idx = [dist.index_of(t) for t in forbidden or () if t in dist]
    if method.name is MethodName.MINP:
        return LocalRule(subset, region=minp_region(dist, alpha))
    if method.name is MethodName.GREEDY:
        region = greedy_region(dist, ObjectiveKind.ALPHA, "argmin", alpha, forbidden_idx)
        return LocalRule(subset, region=region)
    objective = method.objective
    if method.small_prob_c:
        res = small_prob_split(dist, objective, alpha, method.small_prob_c, forbidden_idx,
                               method.max_iter)
    else:
        res = branch_and_bound(dist, objective, alpha, forbidden_idx, method.max_iter)
    return LocalRule(subset, region=res.region, iterations=res.iterations,
                     confirmed_optimal=res.confirmed_optimal)


def boundaries_for(
    method: MethodSpec,
    m: MarginVector,
    subset: Tuple[int, ...],
    alpha: Fraction,
    caps: Optional[Sequence[Optional[int]]] = None,
) -> CriticalBoundaries:
    name = method.name
    if name is MethodName.BONF_UNWEIGHTED:
        return unweighted(m, alpha, subset)
    if name is MethodName.BONF_TARONE:
        return tarone(m, alpha, subset)
    if name is MethodName.BONF_HKT:
        return hkt(m, alpha, subset)
    if name is MethodName.BONF_WT:
        return westfall_troendle(m, alpha, subset)
    if name is MethodName.BONF_OPTIMAL_ALPHA:
        return optimize_boundaries(m, ALPHA_SUM, alpha, caps, subset)
    if name is MethodName.BONF_OPTIMAL_POWER:
        objective = power_sum_objective(m, method.alt.p_trt, method.alt.p_ctr, subset)
        return optimize_boundaries(m, objective, alpha, caps, subset)
    if name is MethodName.BONF_GREEDY:
        return greedy_boundaries(m, alpha, "argmin", ALPHA_SUM, subset)
    raise InputError(f"{name.value} is not a boundary method")
