"""Clustering of numeric and nominal attributes via factor analysis.

Nominal columns are encoded as numbers (class cardinalities, or one-hot when
a column has equicardinal classes), a correlation-based factor model is
fitted and Varimax-rotated, and attributes are grouped by the factor that
reproduces the majority of their variance.
"""

import json as _json

from ._core import (
    ConfigError,
    DataError,
    NumericError,
    class_cardinalities,
    correlation_matrix,
    cumulative_variance,
    eigh_symmetric,
    full_loadings,
    pearson,
    rank_with_ties,
    select_factor_count,
    simulate_from_factors,
    varimax_rotate,
    _run_pipeline,
)

__all__ = [
    "ConfigError",
    "DataError",
    "NumericError",
    "class_cardinalities",
    "correlation_matrix",
    "cumulative_variance",
    "eigh_symmetric",
    "full_loadings",
    "pearson",
    "rank_with_ties",
    "run_pipeline",
    "select_factor_count",
    "simulate_from_factors",
    "varimax_rotate",
]

__version__ = "0.1.0"


def run_pipeline(input, **kwargs):
    """Run the whole clustering pipeline on a CSV file.

    Returns a dict with the parsed run report under ``"report"`` and the
    list of files written (relative to ``out_dir``) under ``"written"``.
    Keyword arguments mirror the CLI flags: ``missing_token``,
    ``missing_policy``, ``numeric``, ``nominal``, ``value_maps``, ``rank``,
    ``epsilon``, ``rule``, ``formats``, ``labels``, ``out_dir``,
    ``dump_tables``, ``include_singletons``, ``timestamp``.
    """
    text, written = _run_pipeline(str(input), **kwargs)
    return {"report": _json.loads(text), "written": written}
