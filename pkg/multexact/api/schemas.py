"""
Pydantic schemas for the HTTP API and for every JSON report the CLI writes.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..closed import MethodSpec
from ..model import CrossTable, MarginVector, categories, table_from_dict
from ..model import margins as table_margins
from ..power import Scenario

# ── Inputs ─────────────────────────────────────────────────────────────────

class TableIn(BaseModel):
    k: int = Field(..., ge=1)
    categories: Optional[List[str]] = Field(
        None,
        description="Category patterns such as '10'; defaults to storage order (all-success first)",
    )
    trt: List[int]
    ctr: List[int]

    def to_table(self) -> CrossTable:
        labels = self.categories or [c.label for c in categories(self.k)]
        return table_from_dict(
            {"k": self.k, "categories": labels, "trt": self.trt, "ctr": self.ctr}
        )


class MarginsIn(BaseModel):
    m: List[int]
    n_trt: int = Field(..., ge=0)
    n_ctr: int = Field(..., ge=0)

    def to_margins(self) -> MarginVector:
        return MarginVector(tuple(self.m), self.n_trt, self.n_ctr)


class MethodIn(BaseModel):
    name: str = Field(
        ..., description="optimal-alpha | optimal-area | optimal-power | greedy | minp | bonf-*"
    )
    consonant: bool = False
    alt: Optional[str] = Field(None, description="trt=0.9,0.9;ctr=0.75,0.75;rho=0")
    lex: Optional[str] = Field(None, description="Tie-breaking objectives, e.g. 'area,power'")
    max_iter: Optional[int] = Field(None, ge=1)
    small_prob_c: Optional[float] = Field(None, gt=0, lt=1)

    def to_spec(self) -> MethodSpec:
        return MethodSpec.parse(
            self.name, consonant=self.consonant, alt=self.alt, lex=self.lex,
            max_iter=self.max_iter, small_prob_c=self.small_prob_c,
        )


class _TableOrMargins(BaseModel):
    table: Optional[TableIn] = None
    margins: Optional[MarginsIn] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.table is None) == (self.margins is None):
            raise ValueError("give exactly one of 'table' or 'margins'")
        return self

    def resolve_margins(self) -> MarginVector:
        return self.margins.to_margins() if self.margins else table_margins(self.table.to_table())


class JointDistRequest(_TableOrMargins):
    subset: Optional[List[int]] = None
    alt: Optional[str] = Field(None, description="Assumed alternative for alternative masses")


class FisherRequest(BaseModel):
    table: TableIn
    alpha: str = "0.025"


class RegionRequest(_TableOrMargins):
    method: MethodIn
    alpha: str = "0.025"
    subset: Optional[List[int]] = None


class ClosedTestRequest(BaseModel):
    table: TableIn
    method: MethodIn
    alpha: str = "0.025"
    with_p_values: bool = True


class ScenarioIn(BaseModel):
    n: Optional[int] = Field(None, ge=1, description="Per-group size when both groups are equal")
    n_trt: Optional[int] = Field(None, ge=1)
    n_ctr: Optional[int] = Field(None, ge=1)
    p_trt: List[float]
    p_ctr: List[float]
    rho: float = 0.0
    alpha: str = "0.025"

    def to_scenario(self) -> Scenario:
        return Scenario.from_dict(self.model_dump())


class ExactPowerRequest(BaseModel):
    scenario: ScenarioIn
    method: MethodIn


# ── Distributions ──────────────────────────────────────────────────────────

class PointOut(BaseModel):
    t: List[int]
    weight: str
    alt_mass: Optional[float] = None


class DistributionOut(BaseModel):
    subset: List[int]
    margins: List[int]
    n_trt: int
    n_ctr: int
    total_weight: str
    points: List[PointOut]


class FisherEndpointOut(BaseModel):
    endpoint: int
    t: int
    p: float
    p_num: str
    p_den: str
    critical_value: Optional[int] = None


class FisherOut(BaseModel):
    alpha: float
    endpoints: List[FisherEndpointOut]


# ── Regions ────────────────────────────────────────────────────────────────

class BoundaryOut(BaseModel):
    endpoint: int
    c: Union[int, str]
    tail_num: str
    tail_den: str
    tested: bool


class PreprocessingOut(BaseModel):
    V: int
    V1: int
    V2: int


class RegionOut(BaseModel):
    method: str
    subset: List[int]
    alpha: float
    members: List[List[int]]
    size: int
    level: float
    level_num: str
    level_den: str
    power: Optional[float] = None
    iterations: int = 0
    confirmed_optimal: bool = True
    preprocessing: Optional[PreprocessingOut] = None
    boundaries: Optional[List[BoundaryOut]] = None


# ── Closed tests ───────────────────────────────────────────────────────────

class PValueOut(BaseModel):
    p: Optional[float] = None
    p_num: Optional[str] = None
    p_den: Optional[str] = None


class GlobalOut(PValueOut):
    rejected: bool


class ElementaryOut(PValueOut):
    endpoint: int
    rejected: bool


class SubsetOut(BaseModel):
    subset: List[int]
    method: str
    t: List[int]
    locally_rejected: bool
    closed_rejected: bool
    local_p: PValueOut
    adjusted_p: PValueOut
    iterations: int
    confirmed_optimal: bool
    p_inconsistent: bool
    level: Optional[float] = None
    boundaries: Optional[List[BoundaryOut]] = None


class ClosedTestOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    method: str
    alpha: float
    consonance: str
    k: int
    assumption: Optional[str] = None
    confirmed_optimal: bool
    global_: GlobalOut = Field(..., alias="global")
    elementary: List[ElementaryOut]
    subsets: List[SubsetOut]


# ── Power ──────────────────────────────────────────────────────────────────

class PowerReportOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    method: str
    mode: str
    scenario: Dict[str, Any]
    global_: float = Field(..., alias="global")
    any: float
    all: float
    endpoints: List[float]
    confirmed_fraction: float
    q50: float
    q90: float
    max_iterations: int
    n_sims: Optional[int] = None
    seed: Optional[int] = None
    n_margins: Optional[int] = None
    standard_errors: Dict[str, Any] = Field(default_factory=dict)


class PowerTableOut(BaseModel):
    reports: List[PowerReportOut]


# ── Provenance ─────────────────────────────────────────────────────────────

class RunInfo(BaseModel):
    version: str
    command: str
    config: Dict[str, Any]


class RunOutput(BaseModel):
    run: RunInfo
    result: Dict[str, Any]
