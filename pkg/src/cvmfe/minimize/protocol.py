#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        protocol.py
# Purpose:     Strict-descent swap minimization of the CVM free energy
#
# Created:     04-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Swap protocol for free-energy minimization at fixed composition.

Every trial draws sites uniformly until it holds one A unit and one B unit, swaps
them, and keeps the swap only if the free energy strictly decreases. The number of
A units never changes. Runs stop after ``max_trials`` trials or after
``stall_window`` consecutive rejections, whichever comes first. ::

    from cvmfe.lattice import new_random
    from cvmfe.minimize import minimize_grid

    grid = new_random(16, 16, seed=7)
    best, trace = minimize_grid(grid, eps1=0.0912, max_trials=10_000, seed=1)
    trace.to_csv("trace.csv")

Pattern counts are updated incrementally and audited against a full recount every
``audit_every`` trials.
"""

__all__ = [
    "DEFAULT_STALL_WINDOW",
    "DEFAULT_AUDIT_EVERY",
    "TRACE_COLUMNS",
    "MinimizeConfig",
    "MinimizeTrace",
    "StopReason",
    "TrialRecord",
    "NoSwapPossibleError",
    "default_max_trials",
    "minimize_grid",
]

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..lattice.config_vars import ConfigCounter, CountAuditError
from ..lattice.grid import STATE_A, STATE_B, GridState, Site
from ..thermo.cvm_free_energy import ThermoReport, free_energy_cvm

_logger = logging.getLogger("cvmfe.Minimize")

DEFAULT_STALL_WINDOW = 1000
DEFAULT_AUDIT_EVERY = 1000
AUDIT_TOLERANCE = 1e-9
TRACE_COLUMNS = ("trial", "delta_f", "accepted", "free_energy_after")


class NoSwapPossibleError(ValueError):
    """The grid holds only one unit state, so no A/B pair exists."""


class StopReason(str, Enum):
    MAX_TRIALS = "max-trials"
    STALL_WINDOW = "stall-window"


def default_max_trials(n_sites: int) -> int:
    """``10 N^2`` trials."""
    return 10 * n_sites * n_sites


@dataclass
class MinimizeConfig:
    """Stopping and audit settings for one minimization run.

    ``max_trials = None`` means :func:`default_max_trials` of the grid size.
    """

    max_trials: Optional[int] = None
    stall_window: int = DEFAULT_STALL_WINDOW
    audit_every: int = DEFAULT_AUDIT_EVERY

    def resolved_max_trials(self, n_sites: int) -> int:
        return default_max_trials(n_sites) if self.max_trials is None else self.max_trials

    def validate(self) -> None:
        if self.max_trials is not None and self.max_trials < 1:
            raise ValueError(f"max_trials must be >= 1, got {self.max_trials}")
        if self.stall_window < 1:
            raise ValueError(f"stall_window must be >= 1, got {self.stall_window}")
        if self.audit_every < 1:
            raise ValueError(f"audit_every must be >= 1, got {self.audit_every}")


class TrialRecord(NamedTuple):
    trial: int
    site_a: Site
    site_b: Site
    delta_f: float
    accepted: bool
    free_energy_after: float


@dataclass
class MinimizeTrace:
    """Full record of one minimization run."""

    initial_report: ThermoReport
    final_report: ThermoReport
    trials_run: int
    stop_reason: StopReason
    seed: int
    records: List[TrialRecord] = field(default_factory=list)

    @property
    def acceptances(self) -> int:
        return sum(1 for r in self.records if r.accepted)

    def accepted_records(self) -> List[TrialRecord]:
        return [r for r in self.records if r.accepted]

    def to_dataframe(self) -> pd.DataFrame:
        """Trace rows in the fixed column order of :data:`TRACE_COLUMNS`."""
        return pd.DataFrame(
            [(r.trial, r.delta_f, r.accepted, r.free_energy_after) for r in self.records],
            columns=list(TRACE_COLUMNS),
        )

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        self.to_dataframe().to_csv(path, index=False)
        return path

    def summary(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "trials_run": self.trials_run,
            "acceptances": self.acceptances,
            "stop_reason": self.stop_reason.value,
            "initial": self.initial_report.to_dict(),
            "final": self.final_report.to_dict(),
        }


def _draw(rng: np.random.Generator, counter: ConfigCounter, state: int) -> int:
    while True:
        site = int(rng.integers(counter.n_sites))
        if counter.state(site) == state:
            return site


def _audit(counter: ConfigCounter, current: ThermoReport, eps1: float) -> None:
    counter.audit()
    recomputed = free_energy_cvm(counter.recount().to_config_vars(), eps1).free_energy
    if abs(recomputed - current.free_energy) > AUDIT_TOLERANCE:
        raise CountAuditError(
            f"running free energy {current.free_energy!r} != recount {recomputed!r}"
        )


# pylint: disable=too-many-locals
def minimize_grid(
    grid: GridState,
    eps1: float,
    max_trials: Optional[int] = None,
    stall_window: int = DEFAULT_STALL_WINDOW,
    seed: int = 0,
    *,
    config: Optional[MinimizeConfig] = None,
) -> Tuple[GridState, MinimizeTrace]:
    """Minimize the free energy of ``grid`` at ``eps1`` by strict-descent swaps.

    :param grid: starting grid, left untouched.
    :param eps1: interaction enthalpy.
    :param max_trials: trial budget, ``None`` for ``10 N^2``.
    :param stall_window: consecutive rejections that end the run.
    :param seed: seed of the site-selection stream.
    :param config: overrides the keyword defaults when given.
    :return: the final grid and the trace of every trial.
    :raises NoSwapPossibleError: when the grid is uniform.
    """
    if config is None:
        config = MinimizeConfig(max_trials=max_trials, stall_window=stall_window)
    config.validate()
    if grid.is_uniform:
        raise NoSwapPossibleError("grid is uniform, no A/B pair to swap")

    log = logging.LoggerAdapter(_logger, {"seed": seed, "shape": f"{grid.rows}x{grid.cols}"})
    budget = config.resolved_max_trials(grid.n_sites)
    rng = np.random.default_rng(seed)
    counter = ConfigCounter(grid)
    cols = grid.cols
    current = free_energy_cvm(counter.config_vars(), eps1)
    initial = current
    records: List[TrialRecord] = []
    rejections = 0
    stop_reason = StopReason.MAX_TRIALS
    trial = 0

    log.info("Minimizing from F=%.9f, budget %d trials", current.free_energy, budget)
    for trial in range(1, budget + 1):
        site_a = _draw(rng, counter, STATE_A)
        site_b = _draw(rng, counter, STATE_B)
        counter.swap(site_a, site_b)
        candidate = free_energy_cvm(counter.config_vars(), eps1)
        delta_f = candidate.free_energy - current.free_energy
        accepted = delta_f < 0.0
        if accepted:
            current = candidate
            rejections = 0
        else:
            counter.swap(site_a, site_b)
            rejections += 1
        records.append(
            TrialRecord(
                trial=trial,
                site_a=divmod(site_a, cols),
                site_b=divmod(site_b, cols),
                delta_f=delta_f,
                accepted=accepted,
                free_energy_after=current.free_energy,
            )
        )
        if trial % config.audit_every == 0:
            _audit(counter, current, eps1)
        if rejections >= config.stall_window:
            stop_reason = StopReason.STALL_WINDOW
            break

    trace = MinimizeTrace(
        initial_report=initial,
        final_report=current,
        trials_run=trial,
        stop_reason=stop_reason,
        seed=seed,
        records=records,
    )
    log.info(
        "Stopped after %d trials (%s), %d accepted, F=%.9f",
        trial,
        stop_reason.value,
        trace.acceptances,
        current.free_energy,
    )
    return counter.to_grid(), trace
