"""Sensing, model fitting and the external-to-model pipeline."""

from .config import InvalidConfigError, PipelineConfig
from .pipeline import (
    CannotFitError,
    FitResult,
    PipelineReport,
    SensoryReadings,
    fit_model,
    profile_divergence,
    run_pipeline,
    sense,
    sense_patterns,
)

__all__ = [
    "InvalidConfigError",
    "PipelineConfig",
    "CannotFitError",
    "FitResult",
    "PipelineReport",
    "SensoryReadings",
    "fit_model",
    "profile_divergence",
    "run_pipeline",
    "sense",
    "sense_patterns",
]
