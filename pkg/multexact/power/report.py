"""Power study results, one row per method."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence


@dataclass
class PowerReport:
    method: str
    mode: str                                # "exact" or "simulation"
    scenario: Dict[str, Any]
    p_global: float
    p_any: float
    p_all: float
    p_endpoints: List[float]
    confirmed_fraction: float = 1.0
    q50: float = 0.0
    q90: float = 0.0
    max_iterations: int = 0
    n_sims: Optional[int] = None
    seed: Optional[int] = None
    n_margins: Optional[int] = None
    standard_errors: Dict[str, Any] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.p_endpoints)

    def events_ordered(self, tol: float = 1e-12) -> bool:
        """P(all) <= min P(H_i), max P(H_i) <= P(any) <= P(global)."""
        ep = self.p_endpoints
        return (
            self.p_all <= min(ep) + tol
            and max(ep) <= self.p_any + tol
            and self.p_any <= self.p_global + tol
        )

    def dump(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "mode": self.mode,
            "scenario": self.scenario,
            "global": self.p_global,
            "any": self.p_any,
            "all": self.p_all,
            "endpoints": self.p_endpoints,
            "confirmed_fraction": self.confirmed_fraction,
            "q50": self.q50,
            "q90": self.q90,
            "max_iterations": self.max_iterations,
            "n_sims": self.n_sims,
            "seed": self.seed,
            "n_margins": self.n_margins,
            "standard_errors": self.standard_errors,
        }

    def row(self) -> Dict[str, Any]:
        """Percentages, with the column headers of the published power tables."""
        out: Dict[str, Any] = {"Test": self.method, "Global": _pct(self.p_global),
                               "Any H_i": _pct(self.p_any), "All H_i": _pct(self.p_all)}
        for i, p in enumerate(self.p_endpoints, start=1):
            out[f"H_{i}"] = _pct(p)
        out["C(%)"] = _pct(self.confirmed_fraction)
        out["q50"] = self.q50
        out["q90"] = self.q90
        out["Max"] = self.max_iterations
        return out


def _pct(x: float) -> float:
    return round(100 * x, 1)


def binomial_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / n) if n else 0.0


def to_csv(reports: Sequence[PowerReport]) -> str:
    rows = [r.row() for r in reports]
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_csv(reports: Sequence[PowerReport], path: Path) -> None:
    Path(path).write_text(to_csv(reports))


def summary_lines(reports: Sequence[PowerReport]) -> List[str]:
    lines = []
    for r in reports:
        eps = " ".join(f"H{i + 1}={100 * p:5.1f}" for i, p in enumerate(r.p_endpoints))
        lines.append(
            f"{r.method:<40} global={100 * r.p_global:5.1f} any={100 * r.p_any:5.1f} "
            f"all={100 * r.p_all:5.1f} {eps}"
        )
    return lines
