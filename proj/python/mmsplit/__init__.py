"""Monolith to microservices decomposition analyzer."""

from ._core import (
    ContextDecomposition,
    DecompositionResult,
    Diagnostic,
    MergeEvidence,
    Model,
    ParseError,
    ServiceCandidate,
    ValidationFailure,
    __version__,
    architecture_dot,
    canonicalize,
    decompose,
    derive_table_usage,
    dfd_dot,
    load_model,
    merge_trace,
    parse_model,
    recommendations_json,
    serialize_model,
    summary_json,
    validate_model,
)

__all__ = [
    "ContextDecomposition",
    "DecompositionResult",
    "Diagnostic",
    "MergeEvidence",
    "Model",
    "ParseError",
    "ServiceCandidate",
    "ValidationFailure",
    "__version__",
    "architecture_dot",
    "canonicalize",
    "decompose",
    "derive_table_usage",
    "dfd_dot",
    "load_model",
    "merge_trace",
    "parse_model",
    "recommendations_json",
    "serialize_model",
    "summary_json",
    "validate_model",
]
