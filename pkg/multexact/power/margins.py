"""Unconditional distribution of the pooled category margins of a scenario."""

from __future__ import annotations

import logging
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import multinomial

from ..config import config
from ..exceptions import SupportTooLarge
from ..model import CellProbabilities, MarginVector
from .scenario import Scenario

logger = logging.getLogger(__name__)


def compositions(n: int, d: int) -> np.ndarray:
    """All count vectors of length d summing to n, as an (count, d) array."""
    out: List[Tuple[int, ...]] = []

    def rec(prefix: Tuple[int, ...], left: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (left,))
            return
        for c in range(left, -1, -1):
            rec(prefix + (c,), left - c, slots - 1)

    rec((), n, d)
    return np.array(out, dtype=np.int64).reshape(len(out), d)


def _group_law(n: int, q: CellProbabilities) -> Tuple[np.ndarray, np.ndarray]:
    ys = compositions(n, len(q.q))
    return ys, multinomial.pmf(ys, n, q.q)


def margin_count(n_trt: int, n_ctr: int, d: int) -> int:
    return comb(n_trt + n_ctr + d - 1, d - 1)


def margin_distribution(
    scenario: Scenario, cap: Optional[int] = None
) -> Dict[MarginVector, float]:
    """P(M = m) for every margin vector with positive probability."""
    q_trt, q_ctr = scenario.cells
    return margin_law(scenario.n_trt, scenario.n_ctr, q_trt, q_ctr, cap)


def margin_law(
    n_trt: int,
    n_ctr: int,
    q_trt: CellProbabilities,
    q_ctr: CellProbabilities,
    cap: Optional[int] = None,
) -> Dict[MarginVector, float]:
    cap = config.enumeration_cap if cap is None else cap
    if margin_count(n_trt, n_ctr, len(q_trt.q)) > cap:
        raise SupportTooLarge("margin enumeration", cap)
    y_trt, p_trt = _group_law(n_trt, q_trt)
    y_ctr, p_ctr = _group_law(n_ctr, q_ctr)

    # mixed-radix codes are additive because no pooled count exceeds N
    N = n_trt + n_ctr
    d = y_trt.shape[1]
    radix = (N + 1) ** np.arange(d - 1, -1, -1, dtype=np.int64)
    codes = (y_trt @ radix)[:, None] + (y_ctr @ radix)[None, :]
    mass = np.outer(p_trt, p_ctr)
    uniq, inverse = np.unique(codes.ravel(), return_inverse=True)
    totals = np.bincount(inverse, weights=mass.ravel())

    out: Dict[MarginVector, float] = {}
    for code, p in zip(uniq.tolist(), totals.tolist()):
        if p <= 0:
            continue
        digits = []
        for _ in range(d):
            code, r = divmod(code, N + 1)
            digits.append(r)
        out[MarginVector(tuple(reversed(digits)), n_trt, n_ctr)] = p
    logger.debug("margin distribution: %d margins, mass %.12f", len(out), sum(out.values()))
    return out
