"""Logging setup and run manifests shared by the entry points."""

from .log_setup import configure_logging
from .manifest import RunManifest, dump_json

__all__ = ["configure_logging", "RunManifest", "dump_json"]
