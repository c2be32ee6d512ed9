#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        config_vars.py
# Purpose:     Configuration-variable counting on the periodic zigzag lattice
#
# Created:     02-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Counting of the CVM configuration variables.

Adjacency on a grid with even row count, indices taken modulo the grid shape:

* y-bonds (nearest neighbours) join a site to its two down-neighbours. For an even
  row ``r`` these are ``(r+1, c)`` and ``(r+1, c+1)``; for an odd row they are
  ``(r+1, c-1)`` and ``(r+1, c)``. Up-neighbours use the same column offsets.
* w-bonds (next-nearest neighbours) join ``(r, c)`` to ``(r, c+1)`` and to
  ``(r+2, c)``.
* z-triplets are the chevrons ``u-v-w`` whose ends are both down-neighbours or both
  up-neighbours of the centre ``v``.

Each kind has exactly ``2N`` instances. Fractions are stored per distinct pattern, so
the degeneracy-weighted sums are one. Pairs: y1/w1 = A-A, y2/w2 = A-B (one
orientation), y3/w3 = B-B. Triplets, written end-centre-end: z1 = A-A-A,
z2 = A-A-B (one orientation), z3 = A-B-A, z4 = B-A-B, z5 = A-B-B (one orientation),
z6 = B-B-B.
"""

__all__ = [
    "BETA",
    "GAMMA",
    "ConfigVars",
    "PatternCounts",
    "LatticeIndex",
    "ConfigCounter",
    "CountAuditError",
    "count_config_vars",
    "count_config_vars_batch",
]

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .grid import GridState

_logger = logging.getLogger("cvmfe.ConfigVars")

BETA: NDArray[np.float64] = np.array([1.0, 2.0, 1.0])
GAMMA: NDArray[np.float64] = np.array([1.0, 2.0, 1.0, 1.0, 2.0, 1.0])

# pair class from a + b: AA -> y1, AB -> y2, BB -> y3
_PAIR_CLASS = np.array([2, 1, 0], dtype=np.intp)
# triplet class from 3 * centre + (end_u + end_w)
_TRIPLET_CLASS = np.array([5, 4, 2, 3, 1, 0], dtype=np.intp)

_NORMALIZATION_TOL = 1e-12


class CountAuditError(ArithmeticError):
    """Incrementally maintained counts disagree with a full recount."""


@dataclass(frozen=True)
class ConfigVars:
    """Configuration-variable fractions of one grid or one equilibrium profile."""

    x: Tuple[float, float]
    y: Tuple[float, float, float]
    w: Tuple[float, float, float]
    z: Tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        for name, size in (("x", 2), ("y", 3), ("w", 3), ("z", 6)):
            values = tuple(float(v) for v in getattr(self, name))
            if len(values) != size:
                raise ValueError(f"{name} needs {size} entries, got {len(values)}")
            object.__setattr__(self, name, values)

    @property
    def beta(self) -> Tuple[float, ...]:
        return tuple(BETA)

    @property
    def gamma(self) -> Tuple[float, ...]:
        return tuple(GAMMA)

    @property
    def x1(self) -> float:
        return self.x[0]

    def normalization_errors(self) -> Dict[str, float]:
        """Absolute deviation of each weighted sum from one."""
        return {
            "x": abs(sum(self.x) - 1.0),
            "y": abs(float(BETA @ np.asarray(self.y)) - 1.0),
            "w": abs(float(BETA @ np.asarray(self.w)) - 1.0),
            "z": abs(float(GAMMA @ np.asarray(self.z)) - 1.0),
        }

    def is_normalized(self, tol: float = _NORMALIZATION_TOL) -> bool:
        return all(err <= tol for err in self.normalization_errors().values())

    def gamma_weighted_z(self) -> NDArray[np.float64]:
        """Six-outcome triplet distribution ``gamma_i * z_i``."""
        return GAMMA * np.asarray(self.z)

    def to_dict(self) -> Dict[str, List[float]]:
        return {"x": list(self.x), "y": list(self.y), "w": list(self.w), "z": list(self.z)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Sequence[float]]) -> "ConfigVars":
        missing = {"x", "y", "w", "z"} - set(data)
        if missing:
            raise ValueError(f"missing configuration variables: {sorted(missing)}")
        return cls(
            x=tuple(data["x"]),  # type: ignore[arg-type]
            y=tuple(data["y"]),  # type: ignore[arg-type]
            w=tuple(data["w"]),  # type: ignore[arg-type]
            z=tuple(data["z"]),  # type: ignore[arg-type]
        )

    @classmethod
    def equiprobable(cls) -> "ConfigVars":
        """Profile of a fully random grid: every distinct pattern equally likely."""
        return cls(x=(0.5, 0.5), y=(0.25,) * 3, w=(0.25,) * 3, z=(0.125,) * 6)


@dataclass(frozen=True)
class PatternCounts:
    """Integer pattern counts. ``y``, ``w`` and ``z`` count instances, not fractions."""

    n_sites: int
    n_a: int
    y: Tuple[int, int, int]
    w: Tuple[int, int, int]
    z: Tuple[int, int, int, int, int, int]

    def to_config_vars(self) -> ConfigVars:
        n = self.n_sites
        instances = 2 * n
        return ConfigVars(
            x=(self.n_a / n, (n - self.n_a) / n),
            y=tuple(np.asarray(self.y) / instances / BETA),  # type: ignore[arg-type]
            w=tuple(np.asarray(self.w) / instances / BETA),  # type: ignore[arg-type]
            z=tuple(np.asarray(self.z) / instances / GAMMA),  # type: ignore[arg-type]
        )


class LatticeIndex:
    """Flattened site indices of every y-bond, w-bond and z-triplet for one shape.

    Instances are shared through :meth:`for_shape`; the arrays are read-only.
    """

    def __init__(self, rows: int, cols: int) -> None:
        self.rows = rows
        self.cols = cols
        self.n_sites = rows * cols
        r, c = np.divmod(np.arange(self.n_sites), cols)
        left = np.where(r % 2 == 0, c, c - 1) % cols
        right = np.where(r % 2 == 0, c + 1, c) % cols
        down = (r + 1) % rows
        up = (r - 1) % rows
        site = np.arange(self.n_sites)

        d0, d1 = down * cols + left, down * cols + right
        u0, u1 = up * cols + left, up * cols + right

        self.y_pairs = np.concatenate(
            [np.stack([site, d0], axis=1), np.stack([site, d1], axis=1)]
        )
        self.w_pairs = np.concatenate(
            [
                np.stack([site, r * cols + (c + 1) % cols], axis=1),
                np.stack([site, ((r + 2) % rows) * cols + c], axis=1),
            ]
        )
        self.triplets = np.concatenate(
            [np.stack([d0, site, d1], axis=1), np.stack([u0, site, u1], axis=1)]
        )
        for arr in (self.y_pairs, self.w_pairs, self.triplets):
            arr.setflags(write=False)

        self.y_incidence = self._incidence(self.y_pairs)
        self.w_incidence = self._incidence(self.w_pairs)
        self.z_incidence = self._incidence(self.triplets)

    def _incidence(self, instances: NDArray[np.intp]) -> List[NDArray[np.intp]]:
        touching: List[set[int]] = [set() for _ in range(self.n_sites)]
        for k, members in enumerate(instances.tolist()):
            for s in members:
                touching[s].add(k)
        return [np.array(sorted(t), dtype=np.intp) for t in touching]

    @staticmethod
    @lru_cache(maxsize=32)
    def for_shape(rows: int, cols: int) -> "LatticeIndex":
        return LatticeIndex(rows, cols)

    def pair_classes(self, flat: NDArray[Any], pairs: NDArray[np.intp]) -> NDArray[np.intp]:
        """Pattern class (0..2) of each pair; ``flat`` may carry leading batch axes."""
        total = flat[..., pairs[:, 0]] + flat[..., pairs[:, 1]]
        return _PAIR_CLASS[total]

    def triplet_classes(
        self, flat: NDArray[Any], triplets: NDArray[np.intp]
    ) -> NDArray[np.intp]:
        code = 3 * flat[..., triplets[:, 1]] + flat[..., triplets[:, 0]] + flat[..., triplets[:, 2]]
        return _TRIPLET_CLASS[code]

    def count(self, flat: NDArray[Any]) -> PatternCounts:
        """Full count on one flattened grid."""
        y = np.bincount(self.pair_classes(flat, self.y_pairs), minlength=3)
        w = np.bincount(self.pair_classes(flat, self.w_pairs), minlength=3)
        z = np.bincount(self.triplet_classes(flat, self.triplets), minlength=6)
        return PatternCounts(
            n_sites=self.n_sites,
            n_a=int(flat.sum()),
            y=tuple(int(v) for v in y),  # type: ignore[arg-type]
            w=tuple(int(v) for v in w),  # type: ignore[arg-type]
            z=tuple(int(v) for v in z),  # type: ignore[arg-type]
        )

    def count_by_tile(
        self, flat: NDArray[Any], tile_of_site: NDArray[np.intp], n_tiles: int
    ) -> Dict[str, NDArray[np.int64]]:
        """Pattern counts split by the tile of each instance's anchor site.

        Pairs are anchored at their first site and triplets at their centre, so every
        site anchors two instances of each kind and the per-tile counts sum to
        :meth:`count`. Returns arrays keyed ``n_sites``, ``n_a``, ``y``, ``w``, ``z``
        with ``n_tiles`` rows.
        """

        def split(
            anchors: NDArray[np.intp], classes: NDArray[np.intp], k: int
        ) -> NDArray[np.int64]:
            keys = tile_of_site[anchors] * k + classes
            return np.bincount(keys, minlength=n_tiles * k).reshape(n_tiles, k)

        return {
            "n_sites": np.bincount(tile_of_site, minlength=n_tiles),
            "n_a": np.bincount(tile_of_site, weights=flat, minlength=n_tiles).astype(np.int64),
            "y": split(self.y_pairs[:, 0], self.pair_classes(flat, self.y_pairs), 3),
            "w": split(self.w_pairs[:, 0], self.pair_classes(flat, self.w_pairs), 3),
            "z": split(self.triplets[:, 1], self.triplet_classes(flat, self.triplets), 6),
        }


def count_config_vars(grid: GridState) -> ConfigVars:
    """Configuration-variable fractions over all periodic instances of ``grid``."""
    index = LatticeIndex.for_shape(grid.rows, grid.cols)
    return index.count(grid.cells.ravel().astype(np.intp)).to_config_vars()


def count_config_vars_batch(
    cells: NDArray[Any], rows: int, cols: int
) -> Dict[str, NDArray[np.float64]]:
    """Fractions for a stack of flattened grids of shape ``(batch, rows * cols)``.

    Returns arrays keyed ``x``, ``y``, ``w``, ``z`` with shape ``(batch, k)``.
    """
    index = LatticeIndex.for_shape(rows, cols)
    flat = np.asarray(cells, dtype=np.intp)
    instances = 2 * index.n_sites

    def fractions(classes: NDArray[np.intp], k: int) -> NDArray[np.float64]:
        onehot = classes[..., None] == np.arange(k)
        return onehot.sum(axis=-2) / instances

    n_a = flat.sum(axis=-1) / index.n_sites
    return {
        "x": np.stack([n_a, 1.0 - n_a], axis=-1),
        "y": fractions(index.pair_classes(flat, index.y_pairs), 3) / BETA,
        "w": fractions(index.pair_classes(flat, index.w_pairs), 3) / BETA,
        "z": fractions(index.triplet_classes(flat, index.triplets), 6) / GAMMA,
    }


class ConfigCounter:
    """Mutable working grid with incrementally maintained pattern counts.

    A swap only revisits the bonds and triplets that touch the two exchanged sites.
    :meth:`audit` compares the running counts against a full recount.
    """

    def __init__(self, grid: GridState) -> None:
        self.rows = grid.rows
        self.cols = grid.cols
        self.seed = grid.seed
        self._index = LatticeIndex.for_shape(grid.rows, grid.cols)
        self._flat = grid.cells.ravel().astype(np.intp)
        counts = self._index.count(self._flat)
        self._n_a = counts.n_a
        self._y = np.array(counts.y, dtype=np.int64)
        self._w = np.array(counts.w, dtype=np.int64)
        self._z = np.array(counts.z, dtype=np.int64)

    @property
    def n_sites(self) -> int:
        return self._index.n_sites

    def state(self, flat_site: int) -> int:
        return int(self._flat[flat_site])

    def counts(self) -> PatternCounts:
        return PatternCounts(
            n_sites=self.n_sites,
            n_a=self._n_a,
            y=tuple(int(v) for v in self._y),  # type: ignore[arg-type]
            w=tuple(int(v) for v in self._w),  # type: ignore[arg-type]
            z=tuple(int(v) for v in self._z),  # type: ignore[arg-type]
        )

    def config_vars(self) -> ConfigVars:
        return self.counts().to_config_vars()

    def recount(self) -> PatternCounts:
        """Reference full count of the current cells."""
        return self._index.count(self._flat)

    def audit(self) -> None:
        """:raises CountAuditError: when running and recounted patterns differ."""
        full = self.recount()
        if full != self.counts():
            _logger.error("Count drift on %dx%d grid", self.rows, self.cols)
            raise CountAuditError(f"incremental counts {self.counts()} != recount {full}")

    def _local(self, sites: Tuple[int, int], sign: int) -> None:
        idx = self._index
        ys = np.union1d(idx.y_incidence[sites[0]], idx.y_incidence[sites[1]])
        ws = np.union1d(idx.w_incidence[sites[0]], idx.w_incidence[sites[1]])
        zs = np.union1d(idx.z_incidence[sites[0]], idx.z_incidence[sites[1]])
        self._y += sign * np.bincount(idx.pair_classes(self._flat, idx.y_pairs[ys]), minlength=3)
        self._w += sign * np.bincount(idx.pair_classes(self._flat, idx.w_pairs[ws]), minlength=3)
        self._z += sign * np.bincount(
            idx.triplet_classes(self._flat, idx.triplets[zs]), minlength=6
        )

    def swap(self, site_a: int, site_b: int) -> None:
        """Exchange the states of two flattened sites holding different states."""
        if self._flat[site_a] == self._flat[site_b]:
            raise ValueError(f"sites {site_a} and {site_b} hold the same state")
        self._local((site_a, site_b), -1)
        self._flat[site_a], self._flat[site_b] = self._flat[site_b], self._flat[site_a]
        self._local((site_a, site_b), +1)

    def to_grid(self) -> GridState:
        return GridState(self._flat.reshape(self.rows, self.cols), seed=self.seed)

    def digest(self) -> str:
        return self.to_grid().digest()
