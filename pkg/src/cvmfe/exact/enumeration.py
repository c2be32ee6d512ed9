#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        enumeration.py
# Purpose:     Exhaustive free-energy minimum over balanced small grids
#
# Created:     06-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Brute-force oracle over every grid with exactly half of its units in state A.

Configurations are generated in lexicographic order of the A positions, counted in
numpy batches and evaluated with the same free-energy arithmetic as the rest of the
engine. Batches run on a thread pool and are merged by min-reduction.
"""

__all__ = [
    "MAX_ENUMERATION_SITES",
    "TIE_TOLERANCE",
    "EnumerationResult",
    "TooLargeError",
    "enumerate_min_free_energy",
    "balanced_energies",
]

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..lattice.config_vars import count_config_vars_batch
from ..lattice.grid import GridState, InvalidDimensionError, to_text
from ..thermo.cvm_free_energy import enthalpy_terms, entropy_terms

_logger = logging.getLogger("cvmfe.Enumeration")

MAX_ENUMERATION_SITES = 24
TIE_TOLERANCE = 1e-12
DEFAULT_CHUNK = 4096


class TooLargeError(ValueError):
    """Grid too large for exhaustive enumeration."""


@dataclass
class EnumerationResult:
    """Global minimum over all balanced grids and every grid attaining it."""

    min_free_energy: float
    states_enumerated: int
    eps1: float
    argmin_grids: List[GridState] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_free_energy": self.min_free_energy,
            "states_enumerated": self.states_enumerated,
            "eps1": self.eps1,
            "argmin_grids": [to_text(g) for g in self.argmin_grids],
        }


def _check_size(rows: int, cols: int) -> int:
    n_sites = rows * cols
    if n_sites > MAX_ENUMERATION_SITES:
        raise TooLargeError(
            f"{rows}x{cols} = {n_sites} sites exceeds the enumeration limit of "
            f"{MAX_ENUMERATION_SITES}"
        )
    if rows < 2 or rows % 2 or cols < 1 or n_sites % 2:
        raise InvalidDimensionError(f"cannot enumerate balanced {rows}x{cols} grids")
    return n_sites


def _balanced_chunks(n_sites: int, chunk: int) -> Iterator[NDArray[np.int8]]:
    positions = itertools.combinations(range(n_sites), n_sites // 2)
    while True:
        block = list(itertools.islice(positions, chunk))
        if not block:
            return
        cells = np.zeros((len(block), n_sites), dtype=np.int8)
        np.put_along_axis(cells, np.array(block, dtype=np.intp), 1, axis=1)
        yield cells


def _free_energies(
    cells: NDArray[np.int8], rows: int, cols: int, eps1: float
) -> NDArray[np.float64]:
    cv = count_config_vars_batch(cells, rows, cols)
    return enthalpy_terms(cv["z"], eps1) - entropy_terms(cv["x"], cv["y"], cv["w"], cv["z"])


def enumerate_min_free_energy(
    rows: int,
    cols: int,
    eps1: float,
    *,
    threads: Optional[int] = None,
    chunk: int = DEFAULT_CHUNK,
) -> EnumerationResult:
    """Minimum free energy over all ``C(N, N/2)`` balanced ``rows x cols`` grids.

    All grids within 1e-12 of the minimum are returned, in enumeration order.

    :raises TooLargeError: for more than 24 sites.
    """
    n_sites = _check_size(rows, cols)
    expected = comb(n_sites, n_sites // 2)

    def evaluate(cells: NDArray[np.int8]) -> Tuple[int, float, NDArray[np.int8]]:
        energies = _free_energies(cells, rows, cols, eps1)
        best = float(energies.min())
        return len(cells), best, cells[energies <= best + TIE_TOLERANCE]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(evaluate, _balanced_chunks(n_sites, chunk)))

    enumerated = sum(p[0] for p in partials)
    if enumerated != expected:
        raise ArithmeticError(f"enumerated {enumerated} states, expected {expected}")
    best = min(p[1] for p in partials)
    winners: List[GridState] = []
    for _, local_best, cells in partials:
        if local_best > best + TIE_TOLERANCE:
            continue
        energies = _free_energies(cells, rows, cols, eps1)
        winners.extend(
            GridState(c.reshape(rows, cols)) for c in cells[energies <= best + TIE_TOLERANCE]
        )
    _logger.info(
        "Enumerated %d states of %dx%d at eps1=%g: min F=%.12f (%d ties)",
        enumerated,
        rows,
        cols,
        eps1,
        best,
        len(winners),
    )
    return EnumerationResult(
        min_free_energy=best, states_enumerated=enumerated, eps1=eps1, argmin_grids=winners
    )


def balanced_energies(rows: int, cols: int, eps1: float) -> NDArray[np.float64]:
    """Microstate energies ``N * H`` of every balanced grid, in enumeration order."""
    n_sites = _check_size(rows, cols)
    parts = [
        n_sites * enthalpy_terms(count_config_vars_batch(cells, rows, cols)["z"], eps1)
        for cells in _balanced_chunks(n_sites, DEFAULT_CHUNK)
    ]
    return np.concatenate(parts)
