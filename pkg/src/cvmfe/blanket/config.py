#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        config.py
# Purpose:     Pipeline configuration and its JSON/TOML file form
#
# Created:     07-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Pipeline configuration.

A config file is a flat JSON object or TOML table. Example (TOML)::

    external_dims = [32, 32]
    repr_dims = [16, 16]
    sense_block = [2, 2]
    eps1_true = 0.0911607783969773
    fit_restarts = 4
    fit_trials = 20000
    seed = 1

Omitting ``eps1_true`` (or setting it to ``null`` in JSON) leaves the external
world random. See ``design/user_guide.md`` for every key.
"""

__all__ = ["PipelineConfig", "InvalidConfigError"]

import json
import logging
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_logger = logging.getLogger("cvmfe.PipelineConfig")

Dims = Tuple[int, int]


class InvalidConfigError(ValueError):
    """A pipeline setting is missing, unknown or out of range."""

    def __init__(self, field_name: str, reason: str) -> None:
        self.field = field_name
        super().__init__(f"{field_name}: {reason}")


def _dims(name: str, value: Any) -> Dims:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise InvalidConfigError(name, f"expected two integers, got {value!r}")
    if value[0] < 1 or value[1] < 1:
        raise InvalidConfigError(name, f"dimensions must be positive, got {list(value)}")
    return int(value[0]), int(value[1])


def _int(name: str, value: Any, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidConfigError(name, f"expected an integer, got {value!r}")
    if value < minimum:
        raise InvalidConfigError(name, f"must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class PipelineConfig:  # pylint: disable=too-many-instance-attributes
    """Settings of one external world -> representation -> model run.

    :param external_dims: rows and columns of the external grid.
    :param repr_dims: rows and columns of the representational grid.
    :param sense_block: block each sensory unit pools over; tiles the external grid.
    :param eps1_true: interaction enthalpy the external grid is relaxed at; ``None``
        keeps it random.
    :param fit_restarts: restarts of the model fit.
    :param fit_trials: trial budget of each fit restart.
    :param seed: master seed; every stage draws its own sub-seed from it.
    :param world_trials: trial budget for relaxing the external grid.
    :param stall_window: consecutive rejections that end a minimization.
    """

    external_dims: Dims
    repr_dims: Dims
    sense_block: Dims
    eps1_true: Optional[float] = None
    fit_restarts: int = 4
    fit_trials: int = 20_000
    seed: int = 0
    world_trials: int = 50_000
    stall_window: int = 1000

    def __post_init__(self) -> None:
        ext = _dims("external_dims", self.external_dims)
        rep = _dims("repr_dims", self.repr_dims)
        block = _dims("sense_block", self.sense_block)
        object.__setattr__(self, "external_dims", ext)
        object.__setattr__(self, "repr_dims", rep)
        object.__setattr__(self, "sense_block", block)
        if (rep[0] * block[0], rep[1] * block[1]) != ext:
            raise InvalidConfigError(
                "sense_block",
                f"repr_dims {list(rep)} x sense_block {list(block)} does not tile "
                f"external_dims {list(ext)}",
            )
        if ext[0] % 2 or ext[0] < 4 or ext[1] < 4:
            raise InvalidConfigError(
                "external_dims", f"need an even row count and at least 4x4, got {list(ext)}"
            )
        if rep[0] % 2:
            raise InvalidConfigError("repr_dims", f"row count must be even, got {rep[0]}")
        if self.eps1_true is not None:
            if isinstance(self.eps1_true, bool) or not isinstance(self.eps1_true, (int, float)):
                raise InvalidConfigError("eps1_true", f"expected a number, got {self.eps1_true!r}")
            object.__setattr__(self, "eps1_true", float(self.eps1_true))
        _int("fit_restarts", self.fit_restarts, 1)
        _int("fit_trials", self.fit_trials, 1)
        _int("seed", self.seed, 0)
        _int("world_trials", self.world_trials, 1)
        _int("stall_window", self.stall_window, 1)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("external_dims", "repr_dims", "sense_block"):
            data[key] = list(data[key])
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidConfigError(unknown[0], "unknown setting")
        for required in ("external_dims", "repr_dims", "sense_block"):
            if required not in data:
                raise InvalidConfigError(required, "missing required setting")
        return cls(**dict(data))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "PipelineConfig":
        """Read a ``.json`` or ``.toml`` config file.

        :raises InvalidConfigError: malformed content or settings.
        :raises OSError: the file cannot be read.
        """
        path = Path(path)
        raw = path.read_bytes()
        suffix = path.suffix.lower()
        try:
            if suffix == ".toml":
                data = tomllib.loads(raw.decode("utf-8"))
            elif suffix == ".json":
                data = json.loads(raw.decode("utf-8"))
            else:
                raise InvalidConfigError("config", f"unsupported file type {suffix!r}")
        except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise InvalidConfigError("config", f"cannot parse {path.name}: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfigError("config", "top level must be a table/object")
        _logger.debug("Loaded pipeline config from %s", path)
        return cls.from_dict(data)
