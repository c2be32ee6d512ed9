"""cvmfe - 2-D cluster variation method free-energy engine.

Counts configuration variables on periodic bistate grids, evaluates and minimizes
the CVM free energy, inverts equilibrium profiles for the interaction parameter
``h``, checks the discrete variational free-energy identities and runs the
external-world to model pipeline.
"""

__version__ = "0.1.0"

from pathlib import Path
from typing import Optional, Union

from cvmfe.blanket import PipelineConfig, PipelineReport, run_pipeline
from cvmfe.lattice import ConfigVars, GridState, count_config_vars, from_text, new_random, to_text
from cvmfe.minimize import anneal_profile, minimize_grid
from cvmfe.thermo import (
    ThermoReport,
    analytic_equilibrium,
    analytic_z3,
    estimate_h,
    free_energy_cvm,
)

__all__ = [
    "ConfigVars",
    "GridState",
    "PipelineConfig",
    "PipelineReport",
    "ThermoReport",
    "analytic_equilibrium",
    "analytic_z3",
    "anneal_profile",
    "count_config_vars",
    "estimate_h",
    "free_energy_cvm",
    "from_text",
    "minimize_grid",
    "new_random",
    "run_pipeline",
    "to_text",
]


def fit_world(
    config: Union[str, Path, PipelineConfig], *, threads: Optional[int] = None
) -> PipelineReport:
    """Run the full pipeline from a config object or a JSON/TOML config file.

    :param config: a :class:`PipelineConfig` or the path of a config file.
    :param threads: worker threads for the fit restarts.
    :return: the pipeline report.
    """
    cfg = config if isinstance(config, PipelineConfig) else PipelineConfig.from_file(config)
    return run_pipeline(cfg, threads=threads)


# Expose the high-level API
__all__.append("fit_world")
