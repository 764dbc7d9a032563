"""
Exact unconditional operating characteristics for two endpoints.

Given the margins the closed test is fixed, and the statistic follows the
non-central multivariate hypergeometric law with odds q_trt / q_ctr per
category. Averaging the conditional event probabilities over the margin
distribution de-conditions them.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..closed import ConsonanceSpec, MethodSpec, RegionCache, apply_rules, closed_rules
from ..config import config
from ..dist import OddsVector, joint_alt_distribution
from ..exceptions import InputError
from ..model import MarginVector
from .events import ClosedEvents, EventTally, weighted_quantile
from .margins import margin_distribution
from .report import PowerReport
from .scenario import Scenario

logger = logging.getLogger(__name__)


@dataclass
class MarginOutcome:
    probability: float
    tally: EventTally
    iterations: int
    confirmed: bool


def conditional_outcome(
    method: MethodSpec,
    m: MarginVector,
    odds: OddsVector,
    alpha: Fraction,
    consonance: ConsonanceSpec,
    cache: Optional[RegionCache] = None,
) -> Tuple[EventTally, int, bool]:
    """Event probabilities of the closed test given the margins ``m``."""
    rules = closed_rules(method, m, alpha, consonance, cache, threads=1)
    dist = joint_alt_distribution(m, odds)
    tally = EventTally(m.k)
    for point in dist.points:
        local, elementary = apply_rules(rules, point.t, m.k)
        tally.add(ClosedEvents.from_decisions(local, elementary), point.alt_mass)
    iterations = sum(rule.iterations for rule in rules.values())
    confirmed = all(rule.confirmed_optimal for rule in rules.values())
    return tally, iterations, confirmed


def _margin_chunk(
    method: MethodSpec,
    scenario: Scenario,
    consonance: ConsonanceSpec,
    chunk: Sequence[Tuple[MarginVector, float]],
) -> List[MarginOutcome]:
    cache = RegionCache()
    odds = scenario.odds
    out = []
    for m, prob in chunk:
        tally, iterations, confirmed = conditional_outcome(
            method, m, odds, scenario.alpha, consonance, cache
        )
        out.append(MarginOutcome(prob, tally, iterations, confirmed))
    return out


def _chunks(items: List, n: int) -> List[List]:
    size = max(1, -(-len(items) // n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def exact_power(
    scenario: Scenario,
    method: MethodSpec,
    consonance: Optional[ConsonanceSpec] = None,
    threads: Optional[int] = None,
    cache: Optional[RegionCache] = None,
) -> PowerReport:
    if scenario.k > 2:
        raise InputError("exact power is computed for up to two endpoints; simulate k >= 3")
    if method.alt is not None and method.alt.k != scenario.k:
        raise InputError(f"alternative has {method.alt.k} endpoints, scenario has {scenario.k}")
    consonance = consonance or ConsonanceSpec.for_method(method)
    consonance.check(method, scenario.k)
    threads = config.threads if threads is None else threads

    law = sorted(margin_distribution(scenario).items(), key=lambda kv: kv[0].m, reverse=True)
    logger.info("exact power: %s on %d margins (threads=%d)", method.label, len(law), threads)

    if threads > 1 and len(law) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_margin_chunk, method, scenario, consonance, chunk)
                for chunk in _chunks(law, threads * 4)
            ]
            outcomes = [o for f in futures for o in f.result()]
    else:
        outcomes = []
        cache = cache if cache is not None else RegionCache()
        odds = scenario.odds
        for m, prob in law:
            tally, iterations, confirmed = conditional_outcome(
                method, m, odds, scenario.alpha, consonance, cache
            )
            outcomes.append(MarginOutcome(prob, tally, iterations, confirmed))

    total = EventTally(scenario.k)
    for o in outcomes:
        # o.tally carries conditional probabilities with weight 1
        scaled = EventTally(
            scenario.k,
            weight=o.probability * o.tally.weight,
            global_=o.probability * o.tally.global_,
            any_=o.probability * o.tally.any_,
            all_=o.probability * o.tally.all_,
            endpoints=[o.probability * x for x in o.tally.endpoints],
        )
        total.merge(scaled)
    probs = total.probabilities()
    its = [o.iterations for o in outcomes]
    ws = [o.probability for o in outcomes]
    mass = sum(ws) or 1.0
    return PowerReport(
        method=method.label,
        mode="exact",
        scenario=scenario.dump(),
        p_global=probs["global"],
        p_any=probs["any"],
        p_all=probs["all"],
        p_endpoints=probs["endpoints"],
        confirmed_fraction=sum(o.probability for o in outcomes if o.confirmed) / mass,
        q50=weighted_quantile(its, ws, 0.5),
        q90=weighted_quantile(its, ws, 0.9),
        max_iterations=max(its, default=0),
        n_margins=len(outcomes),
    )
