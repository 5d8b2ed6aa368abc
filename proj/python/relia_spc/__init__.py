"""Reliability growth control charts for inter-failure-time data."""

from ._core import (
    DataError,
    DomainError,
    EstimationError,
    cdf,
    chart_svg,
    control_limits,
    cumulative_from_gaps,
    embedded_dataset,
    fit,
    gaps_from_cumulative,
    intensity,
    mean_value,
    monitor,
    monitor_json,
    quantile,
    report_schema,
    run_cli,
    simulate,
)

__all__ = [
    "DataError",
    "DomainError",
    "EstimationError",
    "cdf",
    "chart_svg",
    "control_limits",
    "cumulative_from_gaps",
    "embedded_dataset",
    "fit",
    "gaps_from_cumulative",
    "intensity",
    "mean_value",
    "monitor",
    "monitor_json",
    "quantile",
    "report_schema",
    "run_cli",
    "simulate",
]
