#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        grid.py
# Purpose:     Bistate periodic zigzag grid, its text format and generation
#
# Created:     02-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Bistate grid used by every other part of the engine.

A grid holds ``rows x cols`` units, each either in state A (stored as ``1``) or
state B (stored as ``0``). Rows are offset in a zigzag (brick) pattern and wrap
periodically in both directions, which is why the row count must be even.

The text format is one line per row, ``'1'`` for A and ``'0'`` for B::

    from cvmfe.lattice.grid import from_text, to_text

    grid = from_text("10\\n01\\n10\\n01\\n")
    print(grid.rows, grid.cols, grid.n_a)   # 4 2 4
    assert from_text(to_text(grid)) == grid
"""

__all__ = [
    "GridState",
    "Site",
    "STATE_A",
    "STATE_B",
    "InvalidDimensionError",
    "GridParseError",
    "SwapPreconditionError",
    "new_random",
    "from_text",
    "to_text",
    "swap",
    "read_grid",
    "write_grid",
]

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray

_logger = logging.getLogger("cvmfe.Grid")

Site = Tuple[int, int]
STATE_A = 1
STATE_B = 0


class InvalidDimensionError(ValueError):
    """Grid shape is not usable on the periodic zigzag lattice."""


class GridParseError(ValueError):
    """Grid text could not be parsed."""

    def __init__(self, line_no: int, reason: str) -> None:
        self.line_no = line_no
        super().__init__(f"line {line_no}: {reason}")


class SwapPreconditionError(ValueError):
    """The two sites of a swap are not one A unit and one B unit."""


def _check_shape(rows: int, cols: int) -> None:
    if rows < 2 or cols < 1:
        raise InvalidDimensionError(f"grid must be at least 2x1, got {rows}x{cols}")
    if rows % 2:
        raise InvalidDimensionError(
            f"row count must be even for the periodic zigzag wrap, got {rows}"
        )


@dataclass(frozen=True, eq=False)
class GridState:
    """Immutable bistate grid.

    :param cells: rows x cols array of 0/1 unit states (1 = A).
    :param seed: provenance of a generated grid, if any. Not part of equality.
    """

    cells: NDArray[np.int8]
    seed: Optional[int] = field(default=None)

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=np.int8, copy=True)
        if cells.ndim != 2:
            raise InvalidDimensionError(f"cells must be 2-D, got {cells.ndim}-D")
        _check_shape(*cells.shape)
        if not np.isin(cells, (STATE_A, STATE_B)).all():
            raise ValueError("every cell must be 0 (B) or 1 (A)")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self.cells.shape[1])

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    @property
    def n_a(self) -> int:
        """Number of units in state A."""
        return int(self.cells.sum())

    @property
    def is_uniform(self) -> bool:
        return self.n_a in (0, self.n_sites)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridState):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(
            np.array_equal(self.cells, other.cells)
        )

    def __hash__(self) -> int:
        return hash((self.cells.shape, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"GridState({self.rows}x{self.cols}, n_a={self.n_a}, seed={self.seed})"

    def digest(self) -> str:
        """SHA-256 of shape and cell bytes; bit-identical grids share a digest."""
        sha = hashlib.sha256(f"{self.rows}x{self.cols}:".encode("ascii"))
        sha.update(self.cells.tobytes())
        return sha.hexdigest()

    def state(self, site: Site) -> int:
        row, col = site
        return int(self.cells[row % self.rows, col % self.cols])

    def with_cells(self, cells: Any) -> "GridState":
        """New grid with the same provenance and different cells."""
        return GridState(np.asarray(cells), seed=self.seed)

    def swap(self, site_a: Site, site_b: Site) -> "GridState":
        """Exchange the states of an A site and a B site."""
        if self.state(site_a) != STATE_A or self.state(site_b) != STATE_B:
            raise SwapPreconditionError(
                f"swap needs an A site and a B site, got {site_a}={self.state(site_a)} "
                f"and {site_b}={self.state(site_b)}"
            )
        cells = self.cells.copy()
        (ra, ca), (rb, cb) = site_a, site_b
        cells[ra % self.rows, ca % self.cols] = STATE_B
        cells[rb % self.rows, cb % self.cols] = STATE_A
        return GridState(cells, seed=self.seed)

    def shift_rows(self, shift: int) -> "GridState":
        """Cyclic row shift. Only even shifts keep the zigzag row parity."""
        if shift % 2:
            raise InvalidDimensionError("row shifts must be even to keep the zigzag parity")
        return self.with_cells(np.roll(self.cells, shift, axis=0))

    def shift_cols(self, shift: int) -> "GridState":
        """Cyclic column shift."""
        return self.with_cells(np.roll(self.cells, shift, axis=1))


def new_random(rows: int, cols: int, seed: int) -> GridState:
    """Random grid with exactly half of the units in state A.

    Every balanced assignment is equally likely; the result depends only on the seed.

    :raises InvalidDimensionError: odd rows, or rows or cols below 4. An even row
        count makes the site count even as well.
    """
    _check_shape(rows, cols)
    if rows < 4 or cols < 4:
        raise InvalidDimensionError(f"generated grids must be at least 4x4, got {rows}x{cols}")
    n_sites = rows * cols
    rng = np.random.default_rng(seed)
    flat = np.zeros(n_sites, dtype=np.int8)
    flat[rng.permutation(n_sites)[: n_sites // 2]] = STATE_A
    _logger.debug("Generated %dx%d grid from seed %d", rows, cols, seed)
    return GridState(flat.reshape(rows, cols), seed=seed)


def from_text(text: str) -> GridState:
    """Parse the '0'/'1' row format. The final newline is optional.

    :raises GridParseError: ragged rows, illegal characters, empty input or an odd
        row count. The message names the offending line.
    """
    lines = text.splitlines()
    if not lines:
        raise GridParseError(1, "empty grid")
    width = len(lines[0])
    rows = []
    for line_no, line in enumerate(lines, start=1):
        if len(line) != width or not line:
            raise GridParseError(line_no, f"expected {width} cells, got {len(line)}")
        bad = set(line) - {"0", "1"}
        if bad:
            raise GridParseError(line_no, f"illegal characters {''.join(sorted(bad))!r}")
        rows.append([int(ch) for ch in line])
    if len(rows) % 2:
        raise GridParseError(len(rows), f"row count must be even, got {len(rows)}")
    return GridState(np.array(rows, dtype=np.int8))


def to_text(grid: GridState) -> str:
    """Newline-terminated '0'/'1' rows."""
    return "".join("".join("1" if v else "0" for v in row) + "\n" for row in grid.cells)


def swap(grid: GridState, site_a: Site, site_b: Site) -> GridState:
    """Functional form of :meth:`GridState.swap`."""
    return grid.swap(site_a, site_b)


def read_grid(path: Union[str, Path]) -> GridState:
    """Read a grid file. File errors propagate as ``OSError``."""
    return from_text(Path(path).read_text(encoding="ascii"))


def write_grid(grid: GridState, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(to_text(grid), encoding="ascii")
    return path
