#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        pipeline.py
# Purpose:     External world -> sensing -> representation -> fitted model
#
# Created:     07-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Markov-blanket pipeline.

Information only flows inward:

1. an external grid is generated and, optionally, relaxed at ``eps1_true``;
2. :func:`sense` pools blocks of the external grid into a representational grid and
   :func:`sense_patterns` reports the configuration variables each block reads;
3. :func:`fit_model` estimates ``h`` from the sensory readings, or from the
   representation when there are none, and minimizes the representation at
   ``eps1 = ln h``;
4. the model is compared with the external grid through the KL divergence of their
   gamma-weighted triplet profiles.

The external grid is only read by the sensing functions. Nothing is written back to it.
A grid relaxed at ``eps1`` sits on the equilibrium profile of ``h = exp(eps1)``, so the
world and the model are both minimized through
:func:`~cvmfe.thermo.cvm_free_energy.grid_eps_from_h`.
"""

__all__ = [
    "CannotFitError",
    "FitResult",
    "PipelineReport",
    "SensoryReadings",
    "sense",
    "sense_patterns",
    "fit_model",
    "profile_divergence",
    "run_pipeline",
]

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..lattice.config_vars import ConfigVars, LatticeIndex, PatternCounts, count_config_vars
from ..lattice.grid import STATE_A, STATE_B, GridState, new_random
from ..minimize.anneal import AnnealResult, anneal_profile
from ..minimize.protocol import MinimizeTrace, minimize_grid
from ..thermo.cvm_free_energy import (
    CvmDomainError,
    ThermoReport,
    free_energy_cvm,
    grid_eps_from_h,
    h_from_eps,
)
from ..thermo.equilibrium import EstimationFailureError, estimate_h
from ..varbayes.distributions import Distribution
from ..varbayes.identities import kl_divergence
from .config import InvalidConfigError, PipelineConfig

_logger = logging.getLogger("cvmfe.Pipeline")

FALLBACK_H = 1.0


class CannotFitError(ValueError):
    """The representational grid holds a single unit state."""


@dataclass
class FitResult:  # pylint: disable=too-many-instance-attributes
    """Model fitted to a representational grid."""

    model: GridState
    h: float
    eps1: float
    report: ThermoReport
    fitted_grid: GridState
    flipped: int = 0
    h_candidates: List[Tuple[str, float]] = field(default_factory=list)
    anneal: Optional[AnnealResult] = None


@dataclass(frozen=True, eq=False)
class SensoryReadings:
    """Pattern counts each sensory unit reads from its block of the external grid.

    Row ``k`` of every array belongs to the block that feeds representational cell
    ``k`` in row-major order. Each block reports the instances anchored at its sites,
    with neighbours read across block borders.
    """

    block: Tuple[int, int]
    n_sites: NDArray[np.int64]
    n_a: NDArray[np.int64]
    y: NDArray[np.int64]
    w: NDArray[np.int64]
    z: NDArray[np.int64]

    @property
    def n_units(self) -> int:
        return len(self.n_sites)

    def pooled(self) -> PatternCounts:
        return PatternCounts(
            n_sites=int(self.n_sites.sum()),
            n_a=int(self.n_a.sum()),
            y=tuple(int(v) for v in self.y.sum(axis=0)),  # type: ignore[arg-type]
            w=tuple(int(v) for v in self.w.sum(axis=0)),  # type: ignore[arg-type]
            z=tuple(int(v) for v in self.z.sum(axis=0)),  # type: ignore[arg-type]
        )

    def config_vars(self) -> ConfigVars:
        """Configuration variables of all readings pooled together."""
        return self.pooled().to_config_vars()


@dataclass
class PipelineReport:  # pylint: disable=too-many-instance-attributes
    """Outcome of one pipeline run."""

    config: PipelineConfig
    external: GridState
    representation: GridState
    model: GridState
    external_cv: ConfigVars
    sensed_cv: ConfigVars
    repr_cv: ConfigVars
    model_cv: ConfigVars
    h_estimated: float
    h_candidates: List[Tuple[str, float]]
    model_thermo: ThermoReport
    divergence: float
    traces: Dict[str, MinimizeTrace] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "external_cv": self.external_cv.to_dict(),
            "sensed_cv": self.sensed_cv.to_dict(),
            "repr_cv": self.repr_cv.to_dict(),
            "model_cv": self.model_cv.to_dict(),
            "h_estimated": self.h_estimated,
            "h_candidates": [{"variable": n, "h": h} for n, h in self.h_candidates],
            "model_thermo": self.model_thermo.to_dict(),
            "divergence": self.divergence,
            "traces": {name: t.summary() for name, t in self.traces.items()},
        }


def _tiling(external: GridState, block: Tuple[int, int]) -> Tuple[int, int]:
    block_rows, block_cols = block
    if (
        block_rows < 1
        or block_cols < 1
        or external.rows % block_rows
        or external.cols % block_cols
    ):
        raise InvalidConfigError(
            "sense_block", f"{list(block)} does not tile a {external.rows}x{external.cols} grid"
        )
    out_rows, out_cols = external.rows // block_rows, external.cols // block_cols
    if out_rows % 2:
        raise InvalidConfigError(
            "sense_block",
            f"{list(block)} leaves {out_rows} representational rows, the row count must be even",
        )
    return out_rows, out_cols


def sense(external: GridState, block: Tuple[int, int], seed: int) -> GridState:
    """Majority-pool ``block``-sized tiles of ``external`` into one unit each.

    Tiles with as many A as B units are settled by a seeded fair coin, drawn in
    row-major tile order.

    :raises InvalidConfigError: when ``block`` does not tile the external grid or
        leaves an odd number of representational rows.
    """
    block_rows, block_cols = block
    out_rows, out_cols = _tiling(external, block)
    tiles = external.cells.reshape(out_rows, block_rows, out_cols, block_cols)
    votes = 2 * tiles.sum(axis=(1, 3), dtype=np.int64) - block_rows * block_cols
    cells = np.where(votes > 0, STATE_A, STATE_B).astype(np.int8)
    ties = votes == 0
    if ties.any():
        rng = np.random.default_rng(seed)
        cells[ties] = rng.integers(0, 2, size=int(ties.sum()), dtype=np.int8)
    return GridState(cells, seed=seed)


def sense_patterns(external: GridState, block: Tuple[int, int]) -> SensoryReadings:
    """Pattern counts read through the same blocks as :func:`sense`.

    :raises InvalidConfigError: on the same block shapes as :func:`sense`.
    """
    out_rows, out_cols = _tiling(external, block)
    r, c = np.divmod(np.arange(external.n_sites), external.cols)
    tile_of_site = (r // block[0]) * out_cols + c // block[1]
    index = LatticeIndex.for_shape(external.rows, external.cols)
    counts = index.count_by_tile(
        external.cells.ravel().astype(np.intp), tile_of_site, out_rows * out_cols
    )
    return SensoryReadings(block=(int(block[0]), int(block[1])), **counts)


def _rebalance(grid: GridState, seed: int) -> Tuple[GridState, int]:
    """Flip the fewest cells, chosen by seed, so exactly half are A."""
    target = grid.n_sites // 2
    excess = grid.n_a - target
    if excess == 0:
        return grid, 0
    majority = STATE_A if excess > 0 else STATE_B
    flat = grid.cells.ravel().copy()
    candidates = np.flatnonzero(flat == majority)
    rng = np.random.default_rng(seed)
    flat[rng.choice(candidates, size=abs(excess), replace=False)] = 1 - majority
    _logger.warning(
        "Rebalanced representation: flipped %d cells to reach x1 = 0.5", abs(excess)
    )
    return grid.with_cells(flat.reshape(grid.cells.shape)), abs(excess)


# pylint: disable=too-many-arguments
def fit_model(
    representation: GridState,
    restarts: int,
    trials: int,
    seed: int,
    *,
    readings: Optional[ConfigVars] = None,
    stall_window: int = 1000,
    threads: Optional[int] = None,
) -> FitResult:
    """Fit a model grid to a representational grid.

    ``h`` is estimated from ``readings`` when the sensory layer supplies them and from
    the balanced representation's configuration variables otherwise, falling back to
    ``h = 1`` when no variable can be inverted. The balanced representation is then
    minimized at ``eps1 = ln h`` with :func:`anneal_profile`.

    :raises CannotFitError: when the representation is uniform.
    """
    if representation.is_uniform:
        raise CannotFitError("representation holds a single unit state, nothing to fit")
    rebalance_seed, anneal_seed = (
        int(v) for v in np.random.SeedSequence(seed).generate_state(2)
    )
    balanced, flipped = _rebalance(representation, rebalance_seed)
    evidence = readings if readings is not None else count_config_vars(balanced)
    candidates: List[Tuple[str, float]] = []
    try:
        h, candidates = estimate_h(evidence)
    except (EstimationFailureError, CvmDomainError) as exc:
        _logger.warning("%s; falling back to h = %.1f", exc, FALLBACK_H)
        h = FALLBACK_H
    eps1 = grid_eps_from_h(h)
    anneal = anneal_profile(
        balanced,
        eps1,
        restarts,
        trials,
        anneal_seed,
        stall_window=stall_window,
        threads=threads,
    )
    return FitResult(
        model=anneal.grid,
        h=h,
        eps1=eps1,
        report=anneal.report,
        fitted_grid=balanced,
        flipped=flipped,
        h_candidates=candidates,
        anneal=anneal,
    )


def profile_divergence(external_cv: ConfigVars, model_cv: ConfigVars) -> float:
    """KL divergence of the model's gamma-weighted triplet profile from the external one."""
    return kl_divergence(
        Distribution.normalized(model_cv.gamma_weighted_z()),
        Distribution.normalized(external_cv.gamma_weighted_z()),
    )


def run_pipeline(cfg: PipelineConfig, *, threads: Optional[int] = None) -> PipelineReport:
    """Run every stage of the pipeline for ``cfg``. Deterministic per ``cfg.seed``.

    A world with ``eps1_true`` is relaxed onto the profile of ``h = exp(2 eps1_true)``.
    """
    world_seed, relax_seed, sense_seed, fit_seed = (
        int(v) for v in np.random.SeedSequence(cfg.seed).generate_state(4)
    )
    log = logging.LoggerAdapter(_logger, {"seed": cfg.seed})
    traces: Dict[str, MinimizeTrace] = {}

    external = new_random(*cfg.external_dims, seed=world_seed)
    if cfg.eps1_true is not None:
        h_true = h_from_eps(cfg.eps1_true)
        external, traces["world"] = minimize_grid(
            external,
            grid_eps_from_h(h_true),
            max_trials=cfg.world_trials,
            stall_window=cfg.stall_window,
            seed=relax_seed,
        )
        log.info("External grid relaxed onto h=%.6g", h_true)

    representation = sense(external, cfg.sense_block, sense_seed)
    sensed_cv = sense_patterns(external, cfg.sense_block).config_vars()
    fit = fit_model(
        representation,
        cfg.fit_restarts,
        cfg.fit_trials,
        fit_seed,
        readings=sensed_cv,
        stall_window=cfg.stall_window,
        threads=threads,
    )
    if fit.anneal is not None:
        traces["fit"] = fit.anneal.best_trace

    external_cv = count_config_vars(external)
    model_cv = count_config_vars(fit.model)
    divergence = profile_divergence(external_cv, model_cv)
    log.info("Fitted h=%.6f, divergence %.6g", fit.h, divergence)
    return PipelineReport(
        config=cfg,
        external=external,
        representation=representation,
        model=fit.model,
        external_cv=external_cv,
        sensed_cv=sensed_cv,
        repr_cv=count_config_vars(representation),
        model_cv=model_cv,
        h_estimated=fit.h,
        h_candidates=fit.h_candidates,
        model_thermo=free_energy_cvm(model_cv, fit.eps1),
        divergence=divergence,
        traces=traces,
    )
