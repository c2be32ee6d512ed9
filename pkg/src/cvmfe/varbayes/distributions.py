#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        distributions.py
# Purpose:     Finite discrete distributions and joint tables
#
# Created:     05-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Finite distributions over external states and joint tables.

A :class:`DiscreteJoint` is indexed ``(i, j)``: ``i`` runs over external (hidden)
states and ``j`` over the flattened blanket-plus-internal state. Model parameters
the table was built for are kept as free-form ``theta`` metadata.
"""

__all__ = [
    "Distribution",
    "DiscreteJoint",
    "DistributionError",
    "ConditioningOnNullError",
    "marginal",
    "conditional_from_joint",
]

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

_logger = logging.getLogger("cvmfe.Distributions")

SUM_TOLERANCE = 1e-12
AxisLike = Union[int, str]
_AXES = {0: 0, "i": 0, "psi": 0, "external": 0, 1: 1, "j": 1, "blanket": 1}


class DistributionError(ValueError):
    """Probabilities are negative or do not sum to one."""


class ConditioningOnNullError(ValueError):
    """Conditioning on a blanket state of zero probability."""


def _checked(values: ArrayLike, what: str, ndim: int) -> NDArray[np.float64]:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim != ndim or arr.size == 0:
        raise DistributionError(f"{what} must be a non-empty {ndim}-D array")
    if not np.isfinite(arr).all() or (arr < 0.0).any():
        raise DistributionError(f"{what} entries must be finite and non-negative")
    total = math.fsum(arr.ravel())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise DistributionError(f"{what} must sum to 1, got {total!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over an indexed outcome set."""

    probs: NDArray[np.float64]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", _checked(self.probs, "probs", 1))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.size:
                raise DistributionError(f"{len(labels)} labels for {self.size} outcomes")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return int(self.probs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.labels == other.labels and bool(np.array_equal(self.probs, other.probs))

    def __hash__(self) -> int:
        return hash((self.probs.tobytes(), self.labels))

    @classmethod
    def normalized(
        cls, weights: ArrayLike, labels: Optional[Sequence[str]] = None
    ) -> "Distribution":
        """Distribution proportional to non-negative ``weights``."""
        arr = np.asarray(weights, dtype=float)
        total = arr.sum()
        if not total > 0.0:
            raise DistributionError("weights must have a positive sum")
        return cls(arr / total, None if labels is None else tuple(labels))

    @classmethod
    def uniform(cls, size: int) -> "Distribution":
        return cls(np.full(size, 1.0 / size))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"probs": self.probs.tolist()}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    @classmethod
    def from_json(cls, data: Any) -> "Distribution":
        """Accepts a bare JSON array or an object with ``probs`` and ``labels``."""
        if isinstance(data, dict):
            if "probs" not in data:
                raise DistributionError("distribution object needs a \"probs\" array")
            labels = data.get("labels")
            return cls(np.asarray(data["probs"]), None if labels is None else tuple(labels))
        return cls(np.asarray(data))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Distribution":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True, eq=False)
class DiscreteJoint:
    """Joint probability table ``p(external = i, blanket = j)``."""

    table: NDArray[np.float64]
    theta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", _checked(self.table, "table", 2))

    @property
    def dims(self) -> Tuple[int, int]:
        return int(self.table.shape[0]), int(self.table.shape[1])

    @classmethod
    def product(cls, p: Distribution, q: Distribution) -> "DiscreteJoint":
        """Independent joint ``p_i q_j``."""
        return cls(np.outer(p.probs, q.probs))

    def column(self, j: int) -> NDArray[np.float64]:
        if not 0 <= j < self.dims[1]:
            raise ValueError(f"blanket state {j} out of range 0..{self.dims[1] - 1}")
        return np.asarray(self.table[:, j])

    def evidence(self, j: int) -> float:
        """Marginal probability of blanket state ``j``."""
        return math.fsum(self.column(j))

    def to_dict(self) -> Dict[str, Any]:
        return {"table": self.table.tolist(), "theta": dict(self.theta)}

    @classmethod
    def from_json(cls, data: Any) -> "DiscreteJoint":
        """Accepts a bare nested array or an object with ``table`` and ``theta``."""
        if isinstance(data, dict):
            if "table" not in data:
                raise DistributionError("joint object needs a \"table\" array")
            return cls(np.asarray(data["table"]), dict(data.get("theta", {})))
        return cls(np.asarray(data))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DiscreteJoint":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def _axis(axis: AxisLike) -> int:
    try:
        return _AXES[axis]
    except KeyError:
        raise ValueError(f"axis must be one of {sorted(map(str, _AXES))}, got {axis!r}") from None


def marginal(joint: DiscreteJoint, axis: AxisLike) -> Distribution:
    """Distribution over ``axis``, summing the table over the other one.

    ``axis`` is ``0``/``"i"`` for external states or ``1``/``"j"`` for blanket states.
    """
    keep = _axis(axis)
    return Distribution.normalized(joint.table.sum(axis=1 - keep))


def conditional_from_joint(joint: DiscreteJoint, given: int) -> Distribution:
    """Posterior over external states given blanket state ``given``.

    :raises ConditioningOnNullError: when the blanket state has zero probability.
    """
    column = joint.column(given)
    evidence = math.fsum(column)
    if evidence <= 0.0:
        _logger.debug("Conditioning on blanket state %d with zero mass", given)
        raise ConditioningOnNullError(f"blanket state {given} has zero probability")
    return Distribution(column / evidence)
