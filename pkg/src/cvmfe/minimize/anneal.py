#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        anneal.py
# Purpose:     Multi-restart wrapper over the swap protocol
#
# Created:     04-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Best-of-N restarts of :func:`~cvmfe.minimize.protocol.minimize_grid`.

Restart 0 starts from the given grid, every later restart from a seeded shuffle of
its cells, so the number of A units is the same for all of them. Restarts run on a
thread pool and are merged in index order; ties go to the lowest index.
"""

__all__ = ["AnnealResult", "anneal_profile", "restart_seeds"]

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..lattice.grid import GridState
from ..thermo.cvm_free_energy import ThermoReport
from .protocol import DEFAULT_STALL_WINDOW, MinimizeConfig, MinimizeTrace, minimize_grid

_logger = logging.getLogger("cvmfe.Anneal")


@dataclass
class AnnealResult:
    """Lowest free-energy grid over all restarts."""

    grid: GridState
    report: ThermoReport
    best_index: int
    traces: List[MinimizeTrace] = field(default_factory=list)
    seeds: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def best_trace(self) -> MinimizeTrace:
        return self.traces[self.best_index]


def restart_seeds(seed: int, restarts: int) -> List[Tuple[int, int]]:
    """``(minimize_seed, shuffle_seed)`` per restart, spawned from one seed."""
    children = np.random.SeedSequence(seed).spawn(restarts)
    return [
        (int(state[0]), int(state[1])) for state in (c.generate_state(2) for c in children)
    ]


def _start_grid(grid: GridState, index: int, shuffle_seed: int) -> GridState:
    if index == 0:
        return grid
    rng = np.random.default_rng(shuffle_seed)
    return grid.with_cells(rng.permutation(grid.cells.ravel()).reshape(grid.cells.shape))


# pylint: disable=too-many-arguments
def anneal_profile(
    grid: GridState,
    eps1: float,
    restarts: int,
    per_restart_trials: Optional[int],
    seed: int,
    *,
    stall_window: int = DEFAULT_STALL_WINDOW,
    threads: Optional[int] = None,
) -> AnnealResult:
    """Run ``restarts`` independent minimizations and keep the best.

    :param per_restart_trials: trial budget of each restart, ``None`` for ``10 N^2``.
    :param threads: worker threads; ``None`` lets the executor decide.
    :raises ValueError: for ``restarts < 1``.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    seeds = restart_seeds(seed, restarts)
    config = MinimizeConfig(max_trials=per_restart_trials, stall_window=stall_window)

    def run(index: int) -> Tuple[GridState, MinimizeTrace]:
        minimize_seed, shuffle_seed = seeds[index]
        start = _start_grid(grid, index, shuffle_seed)
        return minimize_grid(start, eps1, seed=minimize_seed, config=config)

    if threads == 1 or restarts == 1:
        results = [run(i) for i in range(restarts)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(restarts)))

    best_index = 0
    for index, (_, trace) in enumerate(results):
        if trace.final_report.free_energy < results[best_index][1].final_report.free_energy:
            best_index = index
    best_grid, best_trace = results[best_index]
    _logger.info(
        "Best of %d restarts: #%d with F=%.9f",
        restarts,
        best_index,
        best_trace.final_report.free_energy,
    )
    return AnnealResult(
        grid=best_grid,
        report=best_trace.final_report,
        best_index=best_index,
        traces=[trace for _, trace in results],
        seeds=seeds,
    )
