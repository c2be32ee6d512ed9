"""Grids, adjacency and configuration-variable counting."""

from .config_vars import (
    BETA,
    GAMMA,
    ConfigCounter,
    ConfigVars,
    CountAuditError,
    LatticeIndex,
    PatternCounts,
    count_config_vars,
    count_config_vars_batch,
)
from .grid import (
    GridParseError,
    GridState,
    InvalidDimensionError,
    Site,
    SwapPreconditionError,
    from_text,
    new_random,
    read_grid,
    swap,
    to_text,
    write_grid,
)

__all__ = [
    "BETA",
    "GAMMA",
    "ConfigCounter",
    "ConfigVars",
    "CountAuditError",
    "LatticeIndex",
    "PatternCounts",
    "count_config_vars",
    "count_config_vars_batch",
    "GridParseError",
    "GridState",
    "InvalidDimensionError",
    "Site",
    "SwapPreconditionError",
    "from_text",
    "new_random",
    "read_grid",
    "swap",
    "to_text",
    "write_grid",
]
