#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        boltzmann.py
# Purpose:     Partition function and the thermodynamic identities it implies
#
# Created:     06-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Canonical ensemble over a finite list of microstate energies, ``k = 1``.

``Q = sum exp(-beta E_n)``, ``P_n = exp(-beta E_n) / Q``, ``U = sum E_n P_n``,
``S = -sum P_n ln P_n`` and ``F = -ln(Q) / beta``. Every report is checked against
``F = U - S / beta``. Sums run through ``logsumexp`` so large ``beta`` does not
overflow; ``Q`` itself becomes ``inf`` once ``ln Q`` leaves the float range while
``log_q`` stays exact.
"""

__all__ = [
    "BoltzmannReport",
    "ThermoIdentityError",
    "partition_function",
    "log_partition_function",
    "enthalpy_via_logQ_derivative",
]

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import logsumexp, xlogy

from ..thermo.cvm_free_energy import CvmDomainError

_logger = logging.getLogger("cvmfe.Boltzmann")

IDENTITY_RTOL = 1e-12
DEFAULT_DELTA = 1e-5


class ThermoIdentityError(ArithmeticError):
    """``F = U - T S`` does not hold for a computed report."""


@dataclass(frozen=True)
class BoltzmannReport:
    """Ensemble quantities for one energy list at inverse temperature ``beta``."""

    Q: float
    log_q: float
    probs: NDArray[np.float64]
    U: float
    S: float
    F: float
    beta: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Q": self.Q,
            "log_q": self.log_q,
            "probs": self.probs.tolist(),
            "U": self.U,
            "S": self.S,
            "F": self.F,
            "beta": self.beta,
        }


def _energies(energies: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(energies, dtype=float).ravel()
    if arr.size == 0:
        raise CvmDomainError("energy list is empty")
    if not np.isfinite(arr).all():
        raise CvmDomainError("energies must be finite")
    return arr


def _beta(beta: float) -> float:
    if not beta > 0.0:
        raise CvmDomainError(f"beta must be positive, got {beta}")
    return float(beta)


def log_partition_function(energies: ArrayLike, beta: float) -> float:
    """``ln Q`` at ``beta``."""
    return float(logsumexp(-_beta(beta) * _energies(energies)))


def partition_function(energies: ArrayLike, beta: float) -> BoltzmannReport:
    """Partition function, probabilities, internal energy, entropy and free energy.

    :raises CvmDomainError: empty or non-finite energies, or ``beta <= 0``.
    :raises ThermoIdentityError: when ``F`` and ``U - S / beta`` disagree.
    """
    e = _energies(energies)
    beta = _beta(beta)
    log_q = float(logsumexp(-beta * e))
    probs = np.exp(-beta * e - log_q)
    internal = math.fsum(e * probs)
    entropy = -math.fsum(xlogy(probs, probs))
    free = -log_q / beta
    scale = max(1.0, abs(free), abs(internal), abs(entropy / beta))
    if abs(free - (internal - entropy / beta)) > IDENTITY_RTOL * scale:
        raise ThermoIdentityError(
            f"F = {free!r} but U - TS = {internal - entropy / beta!r} at beta={beta}"
        )
    with np.errstate(over="ignore"):
        q = float(np.exp(log_q))
    if math.isinf(q):
        _logger.debug("Q overflows at beta=%g (ln Q = %.6g), keeping log_q only", beta, log_q)
    return BoltzmannReport(
        Q=q,
        log_q=log_q,
        probs=probs,
        U=internal,
        S=entropy,
        F=free,
        beta=beta,
    )


def enthalpy_via_logQ_derivative(  # pylint: disable=invalid-name
    energies: ArrayLike, beta: float, delta: float = DEFAULT_DELTA
) -> float:
    """``-d ln Q / d beta`` by central difference with step ``delta``.

    :raises CvmDomainError: for ``delta <= 0`` or ``beta - delta <= 0``.
    """
    if not delta > 0.0:
        raise CvmDomainError(f"delta must be positive, got {delta}")
    if not beta - delta > 0.0:
        raise CvmDomainError(f"beta - delta must stay positive, got {beta} - {delta}")
    upper = log_partition_function(energies, beta + delta)
    lower = log_partition_function(energies, beta - delta)
    return -(upper - lower) / (2.0 * delta)
