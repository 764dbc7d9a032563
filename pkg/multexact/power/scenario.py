"""
Power-study scenarios: group sizes, true marginal success rates per group, a
common within-subject correlation and the test level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..dist import OddsVector
from ..exceptions import InputError
from ..model import CellProbabilities, parse_alpha
from .cells import cells_from_marginals, check_correlation

SCENARIOS_FILE = Path(__file__).parent.parent.parent / "data" / "scenarios.json"


@dataclass(frozen=True)
class Scenario:
    n_trt: int
    n_ctr: int
    p_trt: Tuple[float, ...]
    p_ctr: Tuple[float, ...]
    rho: float = 0.0
    alpha: Fraction = Fraction(1, 40)
    id: Optional[int] = field(default=None, compare=False)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p_trt", tuple(float(p) for p in self.p_trt))
        object.__setattr__(self, "p_ctr", tuple(float(p) for p in self.p_ctr))
        object.__setattr__(self, "alpha", parse_alpha(self.alpha, allow_zero=False))
        if self.n_trt < 1 or self.n_ctr < 1:
            raise InputError("each group needs at least one subject")
        if len(self.p_trt) != len(self.p_ctr) or not self.p_trt:
            raise InputError("scenario needs one success rate per endpoint in each group")
        for p in (self.p_trt, self.p_ctr):
            check_correlation(p, self.rho)

    @property
    def k(self) -> int:
        return len(self.p_trt)

    @cached_property
    def cells(self) -> Tuple[CellProbabilities, CellProbabilities]:
        return (
            cells_from_marginals(self.p_trt, self.rho),
            cells_from_marginals(self.p_ctr, self.rho),
        )

    @property
    def odds(self) -> OddsVector:
        return OddsVector.from_cells(*self.cells)

    @property
    def is_null(self) -> bool:
        return self.p_trt == self.p_ctr

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Scenario":
        if not isinstance(data, dict):
            raise InputError(f"malformed scenario: expected an object, got {type(data).__name__}")
        for key in ("p_trt", "p_ctr"):
            rates = data.get(key)
            if not isinstance(rates, (list, tuple)) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in rates
            ):
                raise InputError(f"malformed scenario: '{key}' must be a list of success rates")
        n = data.get("n")
        n_trt = data["n_trt"] if data.get("n_trt") is not None else n
        n_ctr = data["n_ctr"] if data.get("n_ctr") is not None else n
        if n_trt is None or n_ctr is None:
            raise InputError("malformed scenario: give 'n' or both 'n_trt' and 'n_ctr'")
        try:
            scenario = cls(
                n_trt=int(n_trt),
                n_ctr=int(n_ctr),
                p_trt=tuple(data["p_trt"]),
                p_ctr=tuple(data["p_ctr"]),
                rho=float(data.get("rho", 0.0)),
                alpha=data.get("alpha", "0.025"),
                id=data.get("id"),
                label=data.get("label", ""),
            )
        except InputError:
            raise
        except ValueError as exc:
            # int() or float() on a non-numeric field
            raise InputError(f"malformed scenario: {exc}") from None
        if "k" in data and int(data["k"]) != scenario.k:
            raise InputError(f"scenario declares k={data['k']} but has {scenario.k} rates")
        return scenario

    def dump(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "label": self.label,
            "k": self.k,
            "n_trt": self.n_trt,
            "n_ctr": self.n_ctr,
            "p_trt": list(self.p_trt),
            "p_ctr": list(self.p_ctr),
            "rho": self.rho,
            "alpha": str(self.alpha),
        }


def _catalogue_rows(path: Optional[Path]) -> List[Dict[str, Any]]:
    path = Path(path or SCENARIOS_FILE)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    rows = data.get("scenarios") if isinstance(data, dict) else data
    if not isinstance(rows, list):
        raise InputError(f"{path}: expected a list of scenarios")
    return rows


def load_scenarios(path: Optional[Path] = None) -> List[Scenario]:
    return [Scenario.from_dict(row) for row in _catalogue_rows(path)]


def get_scenario(scenario_id: int, path: Optional[Path] = None) -> Scenario:
    """Parse only the catalogue row with ``id == scenario_id``."""
    for row in _catalogue_rows(path):
        if isinstance(row, dict) and row.get("id") == scenario_id:
            return Scenario.from_dict(row)
    raise InputError(f"no scenario with id {scenario_id}")
