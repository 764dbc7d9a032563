"""
/region: construct one level-alpha rejection region (or boundary set).
"""

from __future__ import annotations

from fastapi import APIRouter

from ...closed import construct_region
from ...model import parse_alpha
from ..errors import http_errors
from ..schemas import RegionOut, RegionRequest

router = APIRouter(prefix="/region", tags=["region"])


@router.post("", response_model=RegionOut)
def region(req: RegionRequest):
    with http_errors():
        report = construct_region(
            req.method.to_spec(), req.resolve_margins(), parse_alpha(req.alpha), req.subset
        )
        return RegionOut.model_validate(report.dump())
