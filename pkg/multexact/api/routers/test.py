"""
/test: closed testing of a 2^k x 2 table.
"""

from __future__ import annotations

from fastapi import APIRouter, Depends, Request

from ...closed import closed_test
from ..errors import http_errors
from ..schemas import ClosedTestOut, ClosedTestRequest

router = APIRouter(prefix="/test", tags=["test"])


def _get_cache(request: Request):
    return request.app.state.region_cache


@router.post("", response_model=ClosedTestOut)
def run_closed_test(req: ClosedTestRequest, cache=Depends(_get_cache)):
    """Local tests for every intersection, elementary decisions and adjusted p-values."""
    with http_errors():
        report = closed_test(
            req.table.to_table(), req.method.to_spec(), req.alpha,
            with_p_values=req.with_p_values, cache=cache,
        )
        return ClosedTestOut.model_validate(report.dump())
