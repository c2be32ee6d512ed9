"""Swap-based free-energy minimization."""

from .anneal import AnnealResult, anneal_profile, restart_seeds
from .protocol import (
    DEFAULT_AUDIT_EVERY,
    DEFAULT_STALL_WINDOW,
    TRACE_COLUMNS,
    MinimizeConfig,
    MinimizeTrace,
    NoSwapPossibleError,
    StopReason,
    TrialRecord,
    default_max_trials,
    minimize_grid,
)

__all__ = [
    "AnnealResult",
    "anneal_profile",
    "restart_seeds",
    "DEFAULT_AUDIT_EVERY",
    "DEFAULT_STALL_WINDOW",
    "TRACE_COLUMNS",
    "MinimizeConfig",
    "MinimizeTrace",
    "NoSwapPossibleError",
    "StopReason",
    "TrialRecord",
    "default_max_trials",
    "minimize_grid",
]
