"""
Power tables: unconditional operating characteristics of every method on the
bundled scenarios, exact for two endpoints and simulated for three.

Usage:
    python scripts/power_tables.py --scenario-id 9                  # one exact table
    python scripts/power_tables.py --scenario-id 25 --n-sims 2000   # simulated, k = 3
    python scripts/power_tables.py --all --threads 8 --out results/
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

# Make sure the package root is on the path when run as a script
sys.path.insert(0, str(Path(__file__).parent.parent))

from multexact.closed import AltSpec, MethodSpec
from multexact.power import (
    exact_power,
    get_scenario,
    load_scenarios,
    simulate_power,
    summary_lines,
    write_csv,
)

logger = logging.getLogger("power_tables")

# (method, consonant, assumed rho for power-optimal methods)
METHODS = [
    ("bonf-unweighted", False, None),
    ("bonf-hkt", False, None),
    ("bonf-optimal-alpha", False, None),
    ("bonf-optimal-power", False, 0.0),
    ("bonf-greedy", False, None),
    ("minp", False, None),
    ("optimal-alpha", False, None),
    ("optimal-area", False, None),
    ("optimal-power", False, 0.0),
    ("optimal-power", False, 0.5),
    ("optimal-alpha", True, None),
    ("optimal-area", True, None),
    ("optimal-power", True, 0.0),
    ("greedy", False, None),
]


def methods_for(scenario) -> list[MethodSpec]:
    """Power-optimal rows assume the true rates with the listed correlation."""
    out = []
    for name, consonant, rho in METHODS:
        if consonant and scenario.k != 2:
            continue
        alt = None
        if rho is not None:
            alt = AltSpec(scenario.p_trt, scenario.p_ctr, rho).describe()
        out.append(MethodSpec.parse(name, consonant=consonant, alt=alt))
    return out


def run_scenario(scenario, n_sims: int, seed: int, threads: int) -> list:
    reports = []
    for method in methods_for(scenario):
        start = time.perf_counter()
        if scenario.k <= 2:
            report = exact_power(scenario, method, threads=threads)
        else:
            report = simulate_power(scenario, method, n_sims, seed, threads=threads)
        logger.info("scenario %s %s: %.1fs", scenario.id, method.label,
                    time.perf_counter() - start)
        reports.append(report)
    return reports


def main() -> None:
    parser = argparse.ArgumentParser(description="Unconditional power tables")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario-id", type=int, action="append")
    group.add_argument("--all", action="store_true", help="Every bundled scenario")
    parser.add_argument("--n-sims", type=int, default=2000, help="Draws for k >= 3")
    parser.add_argument("--seed", type=int, default=20140101)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    scenarios = load_scenarios() if args.all else [get_scenario(i) for i in args.scenario_id]
    args.out.mkdir(parents=True, exist_ok=True)
    for scenario in scenarios:
        reports = run_scenario(scenario, args.n_sims, args.seed, args.threads)
        path = args.out / f"scenario_{scenario.id:02d}.csv"
        write_csv(reports, path)
        print(f"scenario {scenario.id} ({scenario.label}): n={scenario.n_trt}, k={scenario.k}")
        for line in summary_lines(reports):
            print(f"  {line}")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
