"""Exact solver, referee, and verification suites for the concurrent
graph sharing game: two players split a connected vertex-weighted graph,
the strictly-behind player always takes the next frontier vertex, and a
tie policy arbitrates equal totals."""

from .core import (
    GameState,
    GraphShareError,
    Instance,
    Outcome,
    Player,
    TieEncounteredError,
    TiePolicy,
    apply,
    legal_moves,
    mover,
    play_out,
)
from .generators import (
    gen_cycle7_family,
    gen_random_connected,
    gen_random_tree,
    resample_on_tie,
)
from .instance_io import format_instance, parse_instance
from .oracle import audit_lines, brute_value
from .solve import (
    SolveReport,
    canonical_strategy,
    optimal_responses,
    principal_line,
    response_map,
    solve,
    value_from,
)
from .adversary import (
    GraphShape,
    alternate_optimize,
    extract_forest,
    hill_climb,
    lp_minimize,
    tree_shapes,
)
from .verify import SuiteReport, UnknownSuiteError, run_suite

__all__ = [
    "GameState",
    "GraphShareError",
    "GraphShape",
    "Instance",
    "Outcome",
    "Player",
    "SolveReport",
    "SuiteReport",
    "TieEncounteredError",
    "TiePolicy",
    "UnknownSuiteError",
    "alternate_optimize",
    "apply",
    "audit_lines",
    "brute_value",
    "canonical_strategy",
    "extract_forest",
    "format_instance",
    "gen_cycle7_family",
    "gen_random_connected",
    "gen_random_tree",
    "hill_climb",
    "legal_moves",
    "lp_minimize",
    "mover",
    "optimal_responses",
    "parse_instance",
    "play_out",
    "principal_line",
    "resample_on_tie",
    "response_map",
    "run_suite",
    "solve",
    "tree_shapes",
    "value_from",
]
