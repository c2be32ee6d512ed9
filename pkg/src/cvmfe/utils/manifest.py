#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        manifest.py
# Purpose:     Run manifests and deterministic JSON output
#
# Created:     08-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Every command-line run writes one manifest next to its outputs.

The manifest echoes the parameters of the run, the engine version and the files
written, and carries no timestamps, so repeating a run reproduces it byte for byte.
"""

__all__ = ["RunManifest", "dump_json"]

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union


def _plain(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def dump_json(payload: Any, path: Union[str, Path]) -> Path:
    """Write ``payload`` as indented JSON with a trailing newline."""
    path = Path(path)
    path.write_text(json.dumps(_plain(payload), indent=2) + "\n", encoding="utf-8")
    return path


@dataclass
class RunManifest:
    """Parameters, engine version and outputs of one run."""

    command: str
    config: Dict[str, Any]
    versions: Dict[str, str]
    outputs: List[str] = field(default_factory=list)

    def add_output(self, path: Union[str, Path]) -> None:
        self.outputs.append(str(path))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": _plain(self.config),
            "versions": dict(self.versions),
            "outputs": list(self.outputs),
        }

    def write(self, path: Union[str, Path]) -> Path:
        return dump_json(self.to_dict(), path)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunManifest":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            command=data["command"],
            config=data["config"],
            versions=data["versions"],
            outputs=list(data.get("outputs", [])),
        )
