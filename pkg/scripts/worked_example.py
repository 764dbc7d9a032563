"""
Worked example: rejection regions and closed tests for the urine/duct table.

Prints one row per method (boundaries, exact level, |R|, conditional power
under the assumed alternative) followed by the closed-test decisions.

Usage:
    python scripts/worked_example.py
    python scripts/worked_example.py --alpha 0.05 --alt "trt=0.9,0.9;ctr=0.75,0.75"
    python scripts/worked_example.py --data data/example_table1.json --json out.json
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

# Make sure the package root is on the path when run as a script
sys.path.insert(0, str(Path(__file__).parent.parent))

from multexact.closed import MethodSpec, closed_test, construct_region
from multexact.model import load_table, margins, parse_alpha

ROOT = Path(__file__).parent.parent
DEFAULT_ALT = "trt=0.9,0.9;ctr=0.75,0.75;rho=0"

# (label, method, consonant)
ROWS = [
    ("Bonferroni", "bonf-unweighted", False),
    ("HKT", "bonf-hkt", False),
    ("Westfall-Troendle", "bonf-wt", False),
    ("Bonferroni optimal alpha", "bonf-optimal-alpha", False),
    ("Bonferroni optimal power", "bonf-optimal-power", False),
    ("Bonferroni greedy", "bonf-greedy", False),
    ("minP", "minp", False),
    ("Optimal alpha", "optimal-alpha", False),
    ("Optimal area", "optimal-area", False),
    ("Optimal power", "optimal-power", False),
    ("Cons. optimal alpha", "optimal-alpha", True),
    ("Cons. optimal area", "optimal-area", True),
    ("Cons. optimal power", "optimal-power", True),
    ("Greedy algorithm", "greedy", False),
]


# ---------------------------------------------------------------------------
# Table rows
# ---------------------------------------------------------------------------

def region_rows(m, alpha, alt: str) -> list[dict]:
    rows = []
    for label, name, consonant in ROWS:
        method = MethodSpec.parse(name, consonant=consonant, alt=alt)
        report = construct_region(method, m, alpha)
        c = None
        if report.boundaries is not None:
            c = [b if b is not None else "-" for b in report.boundaries.c]
        rows.append({
            "label": label,
            "c": c,
            "level": 100 * float(report.region.level),
            "size": report.region.size,
            "power": 100 * report.region.power if report.region.power is not None else None,
            "confirmed": report.confirmed_optimal,
        })
    return rows


def closed_rows(table, alpha, alt: str) -> list[dict]:
    rows = []
    for label, name, consonant in ROWS:
        method = MethodSpec.parse(name, consonant=consonant, alt=alt)
        report = closed_test(table, method, alpha)
        rows.append({
            "label": label,
            "global_p": float(report.global_result.p_value),
            "adjusted_p": [float(e.adjusted_p) for e in report.elementary],
            "rejected": report.rejected,
        })
    return rows


def _print_regions(rows: list[dict]) -> None:
    print(f"{'Method':<28} {'c':>10} {'alpha(%)':>9} {'|R|':>5} {'power(%)':>9}")
    for r in rows:
        c = "" if r["c"] is None else "(" + ", ".join(str(x) for x in r["c"]) + ")"
        power = "" if r["power"] is None else f"{r['power']:.1f}"
        flag = "" if r["confirmed"] else "  (not confirmed)"
        print(f"{r['label']:<28} {c:>10} {r['level']:>9.2f} {r['size']:>5} {power:>9}{flag}")


def _print_closed(rows: list[dict]) -> None:
    print(f"\n{'Method':<28} {'global p':>9}  adjusted p per endpoint   rejected")
    for r in rows:
        adj = " ".join(f"{p:.4f}" for p in r["adjusted_p"])
        print(f"{r['label']:<28} {r['global_p']:>9.4f}  {adj:<24} {r['rejected']}")


def main() -> None:
    parser = argparse.ArgumentParser(description="Worked-example regions and closed tests")
    parser.add_argument("--data", type=Path, default=ROOT / "data" / "example_table1.json")
    parser.add_argument("--alpha", default="0.025")
    parser.add_argument("--alt", default=DEFAULT_ALT, help="Assumed alternative")
    parser.add_argument("--json", type=Path, default=None, help="Also write rows as JSON")
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")

    table = load_table(args.data)
    alpha = parse_alpha(args.alpha)
    regions = region_rows(margins(table), alpha, args.alt)
    closed = closed_rows(table, alpha, args.alt)
    _print_regions(regions)
    _print_closed(closed)
    if args.json:
        args.json.write_text(json.dumps({"regions": regions, "closed": closed}, indent=2))
        print(f"\nwrote {args.json}")


if __name__ == "__main__":
    main()
