"""
/power: exact unconditional power for two-endpoint scenarios.
"""

from __future__ import annotations

from fastapi import APIRouter, Depends, Request

from ...power import exact_power
from ..errors import http_errors
from ..schemas import ExactPowerRequest, PowerReportOut

router = APIRouter(prefix="/power", tags=["power"])


def _get_cache(request: Request):
    return request.app.state.region_cache


@router.post("/exact", response_model=PowerReportOut)
def exact(req: ExactPowerRequest, cache=Depends(_get_cache)):
    with http_errors():
        report = exact_power(
            req.scenario.to_scenario(), req.method.to_spec(), threads=1, cache=cache
        )
        return PowerReportOut.model_validate(report.dump())
