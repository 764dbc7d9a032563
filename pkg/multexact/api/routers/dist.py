"""
/dist: exact null (and assumed-alternative) distributions, marginal Fisher tests.
"""

from __future__ import annotations

from fastapi import APIRouter

from ...closed import AltSpec
from ...dist import fisher_tests, joint_alt_distribution, joint_null_distribution
from ...model import margins, normalize_subset, parse_alpha, project
from ..errors import http_errors
from ..schemas import DistributionOut, FisherOut, FisherRequest, JointDistRequest

router = APIRouter(prefix="/dist", tags=["dist"])


@router.post("/joint", response_model=DistributionOut)
def joint(req: JointDistRequest):
    """Support, exact null weights and optional alternative masses of T_J."""
    with http_errors():
        m = req.resolve_margins()
        J = normalize_subset(req.subset, m.k)
        if req.alt:
            dist = joint_alt_distribution(m, AltSpec.parse(req.alt).odds(J), J)
        else:
            dist = joint_null_distribution(m, J)
        return DistributionOut.model_validate(dist.dump())


@router.post("/fisher", response_model=FisherOut)
def fisher(req: FisherRequest):
    """One-sided Fisher's exact test on every endpoint."""
    with http_errors():
        table = req.table.to_table()
        alpha = parse_alpha(req.alpha)
        rows = fisher_tests(margins(table), project(table.counts_trt), alpha)
        return FisherOut(alpha=float(alpha), endpoints=rows)
