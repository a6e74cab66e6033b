"""Inconsistency thresholds for incomplete pairwise comparison matrices.

The package computes graph-conditioned random indices: the acceptability
threshold for the inconsistency of an incomplete pairwise comparison
matrix depends not just on its size and number of missing entries, but on
the graph of known comparisons.  It ships a library, a CLI (``pcmri``)
and an HTTP monitoring service for judging matrices while they are being
filled in.
"""

from .catalog import (
    GraphClass,
    UnsupportedSizeError,
    canonical_form,
    classify,
    enumerate_missing_edge_graphs,
    find_class,
    occurrence_probability,
)
from .completion import (
    CompletionMethod,
    CompletionResult,
    brute_force_lambda,
    minimize_lambda_max,
)
from .core import (
    MISSING,
    SAATY_SCALE,
    ComparisonGraph,
    DisconnectedGraphError,
    IncompletePCM,
    MatrixFormatError,
    PcmError,
    is_connected,
    new_incomplete_pcm,
    parse_matrix_text,
    representing_graph,
)
from .randindex import (
    RIRecord,
    acceptance_ratio_for,
    naive_random_index,
    random_index_exact,
    random_index_montecarlo,
    sample_pcm,
    threshold_table,
)
from .spectral import (
    CR_THRESHOLD,
    ConvergenceError,
    EigenResult,
    consistency_index,
    consistency_ratio,
    dominant_eigenvalue,
    is_acceptable,
    spectral_radius,
)

__version__ = "0.1.0"

__all__ = [
    "CR_THRESHOLD",
    "MISSING",
    "SAATY_SCALE",
    "ComparisonGraph",
    "CompletionMethod",
    "CompletionResult",
    "ConvergenceError",
    "DisconnectedGraphError",
    "EigenResult",
    "GraphClass",
    "IncompletePCM",
    "MatrixFormatError",
    "PcmError",
    "RIRecord",
    "UnsupportedSizeError",
    "acceptance_ratio_for",
    "brute_force_lambda",
    "canonical_form",
    "classify",
    "consistency_index",
    "consistency_ratio",
    "dominant_eigenvalue",
    "enumerate_missing_edge_graphs",
    "find_class",
    "is_acceptable",
    "is_connected",
    "minimize_lambda_max",
    "naive_random_index",
    "new_incomplete_pcm",
    "occurrence_probability",
    "parse_matrix_text",
    "random_index_exact",
    "random_index_montecarlo",
    "representing_graph",
    "sample_pcm",
    "spectral_radius",
    "threshold_table",
]
