"""
Command-line frontend.

Usage:
    multexact dist   --data data/example_table1.json --subset 0,1
    multexact region --data data/example_table1.json --method optimal-area --alpha 0.025
    multexact test   --data data/example_table1.json --method greedy
    multexact power  --scenario-id 9 --method bonf-unweighted --method optimal-power
    multexact export-ilp --data data/toy_subjects.csv --mode joint --objective alpha
    multexact serve

Exit codes: 0 ok, 2 invalid input, 3 an optimization stopped at its iteration cap.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .api.schemas import (
    ClosedTestOut,
    DistributionOut,
    FisherOut,
    PowerReportOut,
    PowerTableOut,
    RegionOut,
    RunInfo,
    RunOutput,
)
from .bonf import ALPHA_SUM, export_bonf_ilp, power_sum_objective
from .closed import AltSpec, MethodSpec, closed_test, construct_region, fisher_forbidden_block
from .config import config
from .dist import fisher_tests, joint_alt_distribution, joint_null_distribution
from .exceptions import InputError, SupportTooLarge
from .model import (
    CrossTable,
    MarginVector,
    load_table,
    margins,
    normalize_subset,
    parse_alpha,
    project,
)
from .power import Scenario, exact_power, get_scenario, simulate_power, summary_lines, to_csv
from .region import Objective
from .search import export_ilp

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCONFIRMED = 3


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_input(p: argparse.ArgumentParser, margins_ok: bool = True) -> None:
    p.add_argument("--data", type=Path, help="Subject CSV or aggregated JSON table")
    p.add_argument("--treatment", default=None, help="Treatment group label in subject CSV")
    p.add_argument("--control", default=None, help="Control group label in subject CSV")
    if margins_ok:
        p.add_argument("--margins", type=_int_list,
                       help="Pooled category counts, all-success first")
        p.add_argument("--n-trt", type=int, help="Treatment group size (with --margins)")
        p.add_argument("--n-ctr", type=int, help="Control group size (with --margins)")


def _add_method(p: argparse.ArgumentParser, repeat: bool = False) -> None:
    if repeat:
        p.add_argument("--method", action="append", required=True,
                       help="Method name; repeat for several methods")
    else:
        p.add_argument("--method", required=True, help="Method name, e.g. optimal-power")
    p.add_argument("--consonant", action="store_true", help="Enforce a consonant closed test")
    p.add_argument("--alt", default=None, help="Assumed alternative 'trt=..;ctr=..;rho=..'")
    p.add_argument("--lex", default=None, help="Tie-breaking objectives, e.g. 'area,power'")
    p.add_argument("--max-iter", type=int, default=None, help="Branch-and-bound iteration cap")
    p.add_argument("--small-prob-c", type=float, default=None,
                   help="Split off support points lighter than this probability")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", default=config.alpha, help="Significance level (exact decimal)")
    p.add_argument("--output", "-o", type=Path, default=None, help="Output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multexact",
        description="Optimal exact rejection regions for multiple Fisher's exact tests",
    )
    parser.add_argument("--version", action="version", version=f"multexact {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    parser.add_argument("--threads", type=int, default=None,
                        help="Worker cap (default MULTEXACT_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="Dump the joint null distribution of the statistics")
    _add_input(p)
    p.add_argument("--subset", type=_int_list, default=None, help="Endpoints to retain (0-based)")
    p.add_argument("--alt", default=None, help="Also report masses under this alternative")
    p.add_argument("--fisher", action="store_true", help="Marginal Fisher tests instead")
    _add_output(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("region", help="Construct one level-alpha rejection region")
    _add_input(p)
    _add_method(p)
    p.add_argument("--subset", type=_int_list, default=None, help="Endpoints to retain (0-based)")
    _add_output(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("test", help="Closed test of a dataset")
    _add_input(p, margins_ok=False)
    _add_method(p)
    p.add_argument("--no-p-values", action="store_true", help="Skip local and adjusted p-values")
    _add_output(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("power", help="Unconditional power of closed tests")
    p.add_argument("--scenario", type=Path, default=None, help="Scenario JSON file")
    p.add_argument("--scenario-id", type=int, default=None, help="Scenario from the catalogue")
    p.add_argument("--n", type=int, default=None, help="Per-group size (inline scenario)")
    p.add_argument("--p-trt", type=_float_list, default=None)
    p.add_argument("--p-ctr", type=_float_list, default=None)
    p.add_argument("--rho", type=float, default=0.0)
    _add_method(p, repeat=True)
    p.add_argument("--simulate", action="store_true", help="Monte Carlo even for k <= 2")
    p.add_argument("--n-sims", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_output(p)
    p.set_defaults(func=cmd_power, alpha=None)

    p = sub.add_parser("export-ilp", help="Write the optimization problem in LP format")
    _add_input(p)
    p.add_argument("--mode", choices=("joint", "bonf"), default="joint")
    p.add_argument("--objective", default="alpha",
                   help="joint: alpha | area | power; bonf: alpha-sum | power-sum")
    p.add_argument("--alt", default=None, help="Assumed alternative for power objectives")
    p.add_argument("--consonant", action="store_true", help="Exclude the consonance block (k=2)")
    p.add_argument("--subset", type=_int_list, default=None)
    p.add_argument("--preprocess", action="store_true", help="Model the preprocessed space only")
    p.add_argument("--fractional", action="store_true",
                   help="Probabilities instead of integer weights")
    _add_output(p)
    p.set_defaults(func=cmd_export_ilp)

    p = sub.add_parser("serve", help="Start the HTTP service")
    p.add_argument("--host", default=config.api_host)
    p.add_argument("--port", type=int, default=config.api_port)
    p.set_defaults(func=cmd_serve)
    return parser


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------

def _read_table(args: argparse.Namespace) -> CrossTable:
    if args.data is None:
        raise InputError("--data is required")
    return load_table(args.data, treatment=args.treatment, control=args.control)


def _read_margins(args: argparse.Namespace) -> MarginVector:
    if getattr(args, "margins", None):
        if args.data is not None:
            raise InputError("give either --data or --margins, not both")
        if args.n_trt is None or args.n_ctr is None:
            raise InputError("--margins needs --n-trt and --n-ctr")
        return MarginVector(tuple(args.margins), args.n_trt, args.n_ctr)
    return margins(_read_table(args))


def _method(args: argparse.Namespace, name: Optional[str] = None) -> MethodSpec:
    return MethodSpec.parse(
        name or args.method, consonant=args.consonant, alt=args.alt, lex=args.lex,
        max_iter=args.max_iter, small_prob_c=args.small_prob_c,
    )


def run_info(args: argparse.Namespace) -> RunInfo:
    resolved: Dict[str, Any] = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in sorted(vars(args).items())
        if k != "func"
    }
    resolved["settings"] = dataclasses.asdict(config)
    return RunInfo(version=__version__, command=args.command, config=resolved)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        args.output.write_text(text if text.endswith("\n") else text + "\n")
        logger.info("wrote %s", args.output)


def _emit_json(args: argparse.Namespace, result: Dict[str, Any]) -> None:
    out = RunOutput(run=run_info(args), result=result)
    _emit(args, out.model_dump_json(indent=2, by_alias=True))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_dist(args: argparse.Namespace) -> int:
    alpha = parse_alpha(args.alpha)
    if args.fisher:
        table = _read_table(args)
        rows = fisher_tests(margins(table), project(table.counts_trt), alpha)
        _emit_json(args, FisherOut(alpha=float(alpha), endpoints=rows).model_dump())
        return EXIT_OK
    m = _read_margins(args)
    J = normalize_subset(args.subset, m.k)
    if args.alt:
        dist = joint_alt_distribution(m, AltSpec.parse(args.alt).odds(J), J)
    else:
        dist = joint_null_distribution(m, J)
    _emit_json(args, DistributionOut.model_validate(dist.dump()).model_dump())
    return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
    report = construct_region(_method(args), _read_margins(args), parse_alpha(args.alpha),
                              args.subset)
    _emit_json(args, RegionOut.model_validate(report.dump()).model_dump())
    return EXIT_OK if report.confirmed_optimal else EXIT_UNCONFIRMED


def _test_summary(report) -> List[str]:
    lines = [f"closed test: {report.method} at alpha={float(report.alpha):g}"]
    if report.assumption:
        lines.append(f"  note: {report.assumption}")
    for s in report.subsets:
        p = "-" if s.adjusted_p is None else f"{float(s.adjusted_p):.4f}"
        mark = "rejected" if s.closed_rejected else "not rejected"
        lines.append(f"  H{list(s.subset)}: t={list(s.t)} adjusted p={p} {mark}")
    if not report.confirmed_optimal:
        lines.append("  warning: at least one local region is not confirmed optimal")
    return lines


def cmd_test(args: argparse.Namespace) -> int:
    report = closed_test(
        _read_table(args), _method(args), parse_alpha(args.alpha),
        with_p_values=not args.no_p_values,
    )
    print("\n".join(_test_summary(report)))
    if args.output is not None:
        _emit_json(args, ClosedTestOut.model_validate(report.dump()).model_dump(by_alias=True))
    return EXIT_OK if report.confirmed_optimal else EXIT_UNCONFIRMED


def _scenario(args: argparse.Namespace) -> Scenario:
    if args.scenario_id is not None:
        return get_scenario(args.scenario_id)
    if args.scenario is not None:
        try:
            data = json.loads(args.scenario.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.scenario}: {exc}") from None
        return Scenario.from_dict(data)
    if args.n is None or args.p_trt is None or args.p_ctr is None:
        raise InputError("give --scenario, --scenario-id or --n/--p-trt/--p-ctr")
    return Scenario.from_dict({"n": args.n, "p_trt": args.p_trt, "p_ctr": args.p_ctr,
                               "rho": args.rho, "alpha": config.alpha})


def cmd_power(args: argparse.Namespace) -> int:
    scenario = _scenario(args)
    simulate = args.simulate or scenario.k >= 3
    if simulate and (args.seed is None or args.n_sims is None):
        raise InputError("simulation needs --seed and --n-sims")
    if args.alpha is not None:
        scenario = dataclasses.replace(scenario, alpha=parse_alpha(args.alpha))
    # the scenario truth is the default assumed alternative
    truth = AltSpec(scenario.p_trt, scenario.p_ctr, scenario.rho).describe()
    reports = []
    for name in args.method:
        method = MethodSpec.parse(
            name, consonant=args.consonant, alt=args.alt or truth, lex=args.lex,
            max_iter=args.max_iter, small_prob_c=args.small_prob_c,
        )
        if args.alt is None and not method.needs_alternative:
            method = dataclasses.replace(method, alt=None)
        if simulate:
            reports.append(simulate_power(scenario, method, args.n_sims, args.seed,
                                          threads=args.threads))
        else:
            reports.append(exact_power(scenario, method, threads=args.threads))
    for line in summary_lines(reports):
        logger.info(line)
    if args.format == "csv":
        header = f"# multexact {__version__} {run_info(args).model_dump_json()}\n"
        _emit(args, header + to_csv(reports))
    else:
        table = PowerTableOut(reports=[PowerReportOut.model_validate(r.dump()) for r in reports])
        _emit_json(args, table.model_dump(by_alias=True))
    return EXIT_OK


def cmd_export_ilp(args: argparse.Namespace) -> int:
    m = _read_margins(args)
    alpha = parse_alpha(args.alpha)
    J = normalize_subset(args.subset, m.k)
    alt = AltSpec.parse(args.alt) if args.alt else None
    if args.mode == "bonf":
        if args.objective == "alpha-sum":
            objective = ALPHA_SUM
        elif args.objective == "power-sum":
            if alt is None:
                raise InputError("power-sum needs --alt")
            objective = power_sum_objective(m, alt.p_trt, alt.p_ctr, J)
        else:
            raise InputError(f"unknown Bonferroni objective {args.objective!r}")
        text = export_bonf_ilp(m, objective, alpha, J, integer_form=not args.fractional)
    else:
        kinds = [x.strip() for x in args.objective.split(",") if x.strip()]
        objective = Objective.parse(kinds[0], kinds[1:])
        if alt is not None:
            dist = joint_alt_distribution(m, alt.odds(J), J)
        else:
            dist = joint_null_distribution(m, J)
        forbidden = None
        if args.consonant:
            forbidden = [dist.index_of(t) for t in fisher_forbidden_block(dist, alpha)]
        text = export_ilp(dist, objective, alpha, forbidden, use_preprocessing=args.preprocess,
                          integer_form=not args.fractional)
    header = f"\\ multexact {__version__}\n\\ run {run_info(args).model_dump_json()}\n"
    _emit(args, header + text)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("multexact.api.app:app", host=args.host, port=args.port, reload=False,
                log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry
# ---------------------------------------------------------------------------

def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be at least 1")
        config.threads = args.threads
    try:
        return args.func(args)
    except (InputError, SupportTooLarge) as exc:
        print(f"multexact: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
