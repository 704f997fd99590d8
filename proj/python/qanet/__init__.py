"""Python bindings for the qanet analysis library."""

from ._qanet import (
    ConvergenceError,
    Error,
    ParseError,
    PipelineError,
    ValidationError,
    __version__,
    classify_user,
    clustering,
    eigenvector_centrality,
    generate_corpus,
    load_corpus_summary,
    project_words,
    reciprocity,
    run_pipeline,
    select_top_words,
    snowball_sample,
    tokenize,
)

__all__ = [
    "ConvergenceError",
    "Error",
    "ParseError",
    "PipelineError",
    "ValidationError",
    "__version__",
    "classify_user",
    "clustering",
    "eigenvector_centrality",
    "generate_corpus",
    "load_corpus_summary",
    "project_words",
    "reciprocity",
    "run_pipeline",
    "select_top_words",
    "snowball_sample",
    "tokenize",
]
