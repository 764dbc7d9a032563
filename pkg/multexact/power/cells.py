"""
Joint cell probabilities of k correlated binary endpoints with given marginal
success rates and a common pairwise product-moment (phi) correlation.

k = 1   (p, 1 - p)
k = 2   q11 = p1 p2 + rho sqrt(p1 (1-p1) p2 (1-p2)), the rest by the margins
k >= 3  dichotomized Gaussian: X_i = 1 iff Z_i <= Phi^-1(p_i) for a latent
        normal vector Z whose pairwise correlations are solved so that every
        pair of binaries has phi correlation rho
"""

from __future__ import annotations

import logging
import math
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.stats import multivariate_normal, norm

from ..exceptions import InputError
from ..model import CellProbabilities
from ..model.categories import pattern_matrix

logger = logging.getLogger(__name__)

_ORTHANT_EPS = 1e-10
_LATENT_EDGE = 1 - 1e-7


def phi_range(p1: float, p2: float) -> Tuple[float, float]:
    """Attainable phi correlations of two binaries with success rates p1, p2."""
    s = math.sqrt(p1 * (1 - p1) * p2 * (1 - p2))
    lo = (max(0.0, p1 + p2 - 1) - p1 * p2) / s
    hi = (min(p1, p2) - p1 * p2) / s
    return lo, hi


def feasible_rho_range(p: Sequence[float]) -> Tuple[float, float]:
    lo, hi = -1.0, 1.0
    for a, b in combinations(p, 2):
        plo, phi = phi_range(a, b)
        lo, hi = max(lo, plo), min(hi, phi)
    return lo, hi


def _check_rates(p: Sequence[float]) -> None:
    if not p:
        raise InputError("need at least one marginal success rate")
    for x in p:
        if not 0 < x < 1:
            raise InputError(f"success rates must lie strictly between 0 and 1, got {x}")


def _infeasible(p: Sequence[float], rho: float) -> InputError:
    lo, hi = feasible_rho_range(p)
    return InputError(
        f"correlation rho={rho} is infeasible for rates {list(p)}; "
        f"feasible range is [{lo:.6f}, {hi:.6f}]"
    )


def _pair_cells(p1: float, p2: float, rho: float) -> Tuple[float, float, float, float]:
    q11 = p1 * p2 + rho * math.sqrt(p1 * (1 - p1) * p2 * (1 - p2))
    return q11, p1 - q11, p2 - q11, 1 - p1 - p2 + q11


def _orthant(upper, cov) -> float:
    """P(Z <= upper) for a centred normal vector Z with covariance ``cov``."""
    return float(multivariate_normal.cdf(
        upper, mean=np.zeros(len(upper)), cov=cov, abseps=_ORTHANT_EPS, releps=_ORTHANT_EPS,
    ))


def latent_correlation(p1: float, p2: float, rho: float) -> float:
    """Correlation of the latent normal pair that yields phi correlation ``rho``."""
    target = _pair_cells(p1, p2, rho)[0]
    z = (norm.ppf(p1), norm.ppf(p2))

    def gap(r: float) -> float:
        return _orthant(z, np.array([[1.0, r], [r, 1.0]])) - target

    lo, hi = gap(-_LATENT_EDGE), gap(_LATENT_EDGE)
    if lo > 0 or hi < 0:
        raise _infeasible((p1, p2), rho)
    return brentq(gap, -_LATENT_EDGE, _LATENT_EDGE, xtol=1e-12)


def _dichotomized_gaussian(p: Sequence[float], rho: float) -> np.ndarray:
    k = len(p)
    latent = np.eye(k)
    for i, j in combinations(range(k), 2):
        latent[i, j] = latent[j, i] = latent_correlation(p[i], p[j], rho)
    if np.linalg.eigvalsh(latent).min() <= 0:
        raise InputError(
            f"no latent normal vector reproduces rho={rho} for rates {list(p)} "
            "(latent correlation matrix is not positive definite)"
        )
    z = norm.ppf(np.asarray(p, dtype=np.float64))
    pats = pattern_matrix(k)
    q = np.empty(len(pats))
    for pos, row in enumerate(pats):
        # flip the failures: Z_i > z_i  <=>  -Z_i < -z_i
        sign = np.where(row == 1, 1.0, -1.0)
        q[pos] = max(_orthant(sign * z, latent * np.outer(sign, sign)), 0.0)
    logger.debug("dichotomized gaussian: latent=%s cells=%s", latent.tolist(), q.tolist())
    return q / q.sum()


def check_correlation(p: Sequence[float], rho: float) -> None:
    """Reject rates outside (0, 1) and a rho outside every pair's attainable phi range."""
    _check_rates(p)
    if len(p) < 2:
        return
    lo, hi = feasible_rho_range(p)
    if not lo - 1e-12 <= rho <= hi + 1e-12:
        raise _infeasible(p, rho)


def cells_from_marginals(p: Sequence[float], rho: float = 0.0) -> CellProbabilities:
    p = [float(x) for x in p]
    check_correlation(p, rho)
    k = len(p)
    if k == 1:
        return CellProbabilities((p[0], 1 - p[0]))
    if k == 2:
        cells = _pair_cells(p[0], p[1], rho)
        if min(cells) < -1e-12:
            raise _infeasible(p, rho)
        return CellProbabilities(tuple(max(c, 0.0) for c in cells))
    if rho == 0:
        pats = pattern_matrix(k)
        q = [math.prod(pi if s else 1 - pi for pi, s in zip(p, row)) for row in pats]
        return CellProbabilities(tuple(q))
    return CellProbabilities(tuple(_dichotomized_gaussian(p, rho)))
