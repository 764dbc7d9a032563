from .cells import cells_from_marginals, feasible_rho_range, latent_correlation, phi_range
from .events import ClosedEvents, EventTally, weighted_quantile
from .exact import conditional_outcome, exact_power
from .margins import compositions, margin_distribution, margin_law
from .report import PowerReport, summary_lines, to_csv, write_csv
from .scenario import Scenario, get_scenario, load_scenarios
from .simulate import draw_rng, draw_table, simulate_cells, simulate_power

__all__ = [
    "ClosedEvents",
    "EventTally",
    "PowerReport",
    "Scenario",
    "cells_from_marginals",
    "compositions",
    "conditional_outcome",
    "draw_rng",
    "draw_table",
    "exact_power",
    "feasible_rho_range",
    "get_scenario",
    "latent_correlation",
    "load_scenarios",
    "margin_distribution",
    "margin_law",
    "phi_range",
    "simulate_cells",
    "simulate_power",
    "summary_lines",
    "to_csv",
    "weighted_quantile",
    "write_csv",
]
