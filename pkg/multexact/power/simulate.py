"""
Monte Carlo operating characteristics. Draw i uses its own generator seeded by
(seed, i), so results do not depend on how draws are spread over workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..closed import ConsonanceSpec, MethodSpec, RegionCache, closed_decisions
from ..config import config
from ..exceptions import InputError
from ..model import CellProbabilities, CrossTable, margins, project
from .events import ClosedEvents, EventTally
from .report import PowerReport, binomial_se
from .scenario import Scenario

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DrawOutcome:
    events: ClosedEvents
    iterations: int
    confirmed: bool


def draw_rng(seed: int, draw: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, draw]))


def draw_table(
    q_trt: CellProbabilities, q_ctr: CellProbabilities, n_trt: int, n_ctr: int,
    rng: np.random.Generator,
) -> CrossTable:
    d = len(q_trt.q)
    k = d.bit_length() - 1
    p_trt = np.clip(np.asarray(q_trt.q), 0.0, None)
    p_ctr = np.clip(np.asarray(q_ctr.q), 0.0, None)
    trt = np.bincount(rng.choice(d, size=n_trt, p=p_trt / p_trt.sum()), minlength=d)
    ctr = np.bincount(rng.choice(d, size=n_ctr, p=p_ctr / p_ctr.sum()), minlength=d)
    return CrossTable(
        k=k, counts_trt=tuple(int(x) for x in trt), counts_ctr=tuple(int(x) for x in ctr)
    )


def _run_draws(
    method: MethodSpec,
    q_trt: CellProbabilities,
    q_ctr: CellProbabilities,
    n_trt: int,
    n_ctr: int,
    alpha: Fraction,
    consonance: ConsonanceSpec,
    seed: int,
    draws: Sequence[int],
    cache: Optional[RegionCache] = None,
) -> List[DrawOutcome]:
    cache = cache if cache is not None else RegionCache()
    out = []
    for i in draws:
        table = draw_table(q_trt, q_ctr, n_trt, n_ctr, draw_rng(seed, i))
        local, elementary, rules = closed_decisions(
            method, margins(table), project(table.counts_trt), alpha, consonance, cache
        )
        out.append(DrawOutcome(
            events=ClosedEvents.from_decisions(local, elementary),
            iterations=sum(r.iterations for r in rules.values()),
            confirmed=all(r.confirmed_optimal for r in rules.values()),
        ))
    return out


def simulate_cells(
    q_trt: CellProbabilities,
    q_ctr: CellProbabilities,
    n_trt: int,
    n_ctr: int,
    alpha: Fraction,
    method: MethodSpec,
    n_sims: int,
    seed: int,
    consonance: Optional[ConsonanceSpec] = None,
    threads: Optional[int] = None,
    cache: Optional[RegionCache] = None,
    scenario: Optional[Dict] = None,
) -> PowerReport:
    """Simulate the closed test on data drawn from the given cell probabilities."""
    if n_sims < 1:
        raise InputError("n_sims must be at least 1")
    k = q_trt.k
    if method.alt is not None and method.alt.k != k:
        raise InputError(f"alternative has {method.alt.k} endpoints, cells describe {k}")
    consonance = consonance or ConsonanceSpec.for_method(method)
    consonance.check(method, k)
    threads = config.threads if threads is None else threads
    logger.info("simulating %s: %d draws, seed=%d, threads=%d", method.label, n_sims, seed, threads)

    args = (method, q_trt, q_ctr, n_trt, n_ctr, alpha, consonance, seed)
    if threads > 1 and n_sims > 1:
        blocks = np.array_split(np.arange(n_sims), min(n_sims, threads * 4))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_draws, *args, block.tolist()) for block in blocks]
            outcomes = [o for f in futures for o in f.result()]
    else:
        outcomes = _run_draws(*args, range(n_sims), cache)

    tally = EventTally(k)
    for o in outcomes:
        tally.add(o.events)
    probs = tally.probabilities()
    its = np.array([o.iterations for o in outcomes], dtype=np.float64)
    ses = {
        "global": binomial_se(probs["global"], n_sims),
        "any": binomial_se(probs["any"], n_sims),
        "all": binomial_se(probs["all"], n_sims),
        "endpoints": [binomial_se(p, n_sims) for p in probs["endpoints"]],
    }
    return PowerReport(
        method=method.label,
        mode="simulation",
        scenario=scenario or {"n_trt": n_trt, "n_ctr": n_ctr, "q_trt": list(q_trt.q),
                              "q_ctr": list(q_ctr.q), "alpha": str(alpha)},
        p_global=probs["global"],
        p_any=probs["any"],
        p_all=probs["all"],
        p_endpoints=probs["endpoints"],
        confirmed_fraction=sum(o.confirmed for o in outcomes) / n_sims,
        q50=float(np.quantile(its, 0.5)),
        q90=float(np.quantile(its, 0.9)),
        max_iterations=int(its.max()),
        n_sims=n_sims,
        seed=seed,
        standard_errors=ses,
    )


def simulate_power(
    scenario: Scenario,
    method: MethodSpec,
    n_sims: int,
    seed: int,
    consonance: Optional[ConsonanceSpec] = None,
    threads: Optional[int] = None,
    cache: Optional[RegionCache] = None,
) -> PowerReport:
    q_trt, q_ctr = scenario.cells
    return simulate_cells(
        q_trt, q_ctr, scenario.n_trt, scenario.n_ctr, scenario.alpha, method, n_sims, seed,
        consonance=consonance, threads=threads, cache=cache, scenario=scenario.dump(),
    )
