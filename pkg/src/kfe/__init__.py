"""Independent-set enumeration via binary partition with minimum-degree picks,
run-length-encoded adjacency rollback, and amortized-cost instrumentation."""

from .analysis import (
    PoConfig,
    RunStats,
    amortized_cost_report,
    brute_force_count,
    brute_force_independent_sets,
    clique_number,
    instrumented_run,
    po_condition_check,
    run_report,
    space_report,
    turan_degree_bound_check,
)
from .enumerator import (
    CollectSink,
    CountingSink,
    LimitSink,
    MaterializeSink,
    Sink,
    SolutionDiff,
    count_only,
    decode_diff_binary,
    encode_diff_binary,
    enumerate_linear_space,
    enumerate_reference,
    format_diff_text,
    parse_diff_text,
    replay_diffs,
)
from .errors import CorruptionError, GraphParseError, GuardError, MalformedStreamError
from .graph import Graph, generate, parse_dimacs, parse_edge_list
from .ordering import Ordering, apply_shift, compute_shift_diff, restore_parent_ordering, smallest_last
from .rle import RleMatrix, RleSeq, RestoreRecord, build_matrix, decode, encode

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "generate",
    "parse_edge_list",
    "parse_dimacs",
    "RleSeq",
    "RleMatrix",
    "RestoreRecord",
    "encode",
    "decode",
    "build_matrix",
    "Ordering",
    "smallest_last",
    "apply_shift",
    "compute_shift_diff",
    "restore_parent_ordering",
    "SolutionDiff",
    "Sink",
    "CountingSink",
    "CollectSink",
    "MaterializeSink",
    "LimitSink",
    "enumerate_reference",
    "enumerate_linear_space",
    "count_only",
    "replay_diffs",
    "format_diff_text",
    "parse_diff_text",
    "encode_diff_binary",
    "decode_diff_binary",
    "RunStats",
    "PoConfig",
    "brute_force_independent_sets",
    "brute_force_count",
    "clique_number",
    "instrumented_run",
    "turan_degree_bound_check",
    "po_condition_check",
    "amortized_cost_report",
    "space_report",
    "run_report",
    "GraphParseError",
    "CorruptionError",
    "MalformedStreamError",
    "GuardError",
    "__version__",
]
