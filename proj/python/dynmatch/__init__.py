"""Dynamic approximate maximum matching."""

from ._core import (
    DynmatchError,
    Graph,
    ProblemParams,
    Solver,
    batch_length,
    certificate_size_bound,
    derive_child_params,
    exact_max_matching,
    extract_ors_certificate,
    gen_workload,
    greedy_matching,
    opportunistic_match,
    run_metrics_csv,
    validate_ors,
    verify_trace,
)

__all__ = [
    "DynmatchError",
    "Graph",
    "ProblemParams",
    "Solver",
    "batch_length",
    "certificate_size_bound",
    "derive_child_params",
    "exact_max_matching",
    "extract_ors_certificate",
    "gen_workload",
    "greedy_matching",
    "opportunistic_match",
    "run_metrics_csv",
    "validate_ors",
    "verify_trace",
]
