#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        log_setup.py
# Purpose:     Structured logging for command-line runs
#
# Created:     08-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Installs a JSON formatter on the ``cvmfe`` logger.

The library itself never adds handlers; only entry points call
:func:`configure_logging`. Records go to standard error so that standard output
and written files stay free of timestamps.
"""

__all__ = ["configure_logging"]

import logging
import sys

from pythonjsonlogger.json import JsonFormatter

_HANDLER_NAME = "cvmfe-cli"


def configure_logging(verbose: bool = False, json_output: bool = True) -> logging.Logger:
    """Attach one stderr handler to the ``cvmfe`` logger, replacing an earlier one."""
    root = logging.getLogger("cvmfe")
    for handler in [h for h in root.handlers if h.get_name() == _HANDLER_NAME]:
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    if json_output:
        handler.setFormatter(
            JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    return root
