"""Robust maximum flows over time under a budget of edge delays.

Exact rational solvers for optimal temporally repeated and general robust
flows, brute-force adversary evaluation and feasibility checking, the gap
and hardness instance families, and the structural parameters that bound
the gap between the two solution classes.
"""

from .model import (
    EMPTY_SCENARIO, INF, CapExceeded, Edge, Instance, InvalidInstance, Path, Scenario,
    TemporallyRepeatedFlow, Triple, TripleSolution, check_instance, enumerate_scenarios,
    validate_instance,
)
from .paths import capped_delay, enumerate_paths, path_tau, prefix_delay, scenario_delay
from .evaluation import (
    AdversaryReport, PiecewiseConstantFlow, Violation, discretize, greedy_adversary_tr,
    robust_value, robust_value_tr, value_under_scenario, verify_feasibility,
)
from .solvers import (
    PreconditionError, UnboundedInstance, nominal_optimum, solve_general, solve_tr_compact,
    solve_tr_exact,
)
from .analysis import (
    AnalysisReport, analyze, asymptotic_bound, check_t_bounded, compute_eta, compute_k,
    optimality_gap,
)
from .generators import (
    StaticInstance, gen_clique_reduction, gen_disjoint_paths_reduction, gen_linear_gap,
    gen_log_gap, gen_static_embedding,
)
from .textio import (
    ParseError, format_instance, format_solution, parse_instance, parse_solution,
    read_instance, read_solution, write_instance, write_solution,
)

__all__ = [
    "EMPTY_SCENARIO", "INF", "CapExceeded", "Edge", "Instance", "InvalidInstance", "Path",
    "Scenario", "TemporallyRepeatedFlow", "Triple", "TripleSolution", "check_instance",
    "enumerate_scenarios", "validate_instance", "AdversaryReport", "PiecewiseConstantFlow",
    "Violation", "discretize", "greedy_adversary_tr", "robust_value", "robust_value_tr",
    "value_under_scenario", "verify_feasibility", "PreconditionError", "UnboundedInstance",
    "nominal_optimum", "solve_general", "solve_tr_compact", "solve_tr_exact", "AnalysisReport",
    "analyze", "asymptotic_bound", "check_t_bounded", "compute_eta", "compute_k",
    "optimality_gap", "StaticInstance", "gen_clique_reduction", "gen_disjoint_paths_reduction",
    "gen_linear_gap", "gen_log_gap", "gen_static_embedding", "ParseError", "format_instance",
    "format_solution", "parse_instance", "parse_solution", "read_instance", "read_solution",
    "write_instance", "write_solution", "capped_delay", "enumerate_paths", "path_tau",
    "prefix_delay", "scenario_delay",
]

__version__ = "0.1.0"
