#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        cvm_free_energy.py
# Purpose:     Reduced enthalpy, entropy and free energy of the 2-D CVM
#
# Created:     03-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Reduced 2-D CVM thermodynamics with ``kT = 1`` and zero activation enthalpy.

With ``Lf(v) = v ln v`` and ``Lf(0) = 0``::

    H = eps1 * (-z1 + z3 + z4 - z6)
    S = 2 sum(beta Lf(y)) + sum(beta Lf(w)) - sum(Lf(x)) - 2 sum(gamma Lf(z))
    F = H - S

``S`` is zero on a uniform grid and ``ln 2`` on the equiprobable profile. The
array helpers accept leading batch axes so the enumeration oracle and the
equilibrium solver share the same arithmetic.
"""

__all__ = [
    "EPS0",
    "ThermoReport",
    "CvmDomainError",
    "enthalpy_cvm",
    "entropy_cvm",
    "free_energy_cvm",
    "enthalpy_terms",
    "entropy_terms",
    "h_from_eps",
    "eps_from_h",
    "grid_eps_from_h",
    "grid_h_from_eps",
]

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import xlogy

from ..lattice.config_vars import BETA, GAMMA, ConfigVars

_logger = logging.getLogger("cvmfe.CvmFreeEnergy")

EPS0 = 0.0
"""Activation enthalpy. Held at zero: only the interaction term enters."""

ENTHALPY_WEIGHTS: NDArray[np.float64] = np.array([-1.0, 0.0, 1.0, 1.0, 0.0, -1.0])

_RANGE_TOL = 1e-12


class CvmDomainError(ValueError):
    """A value lies outside the domain of a thermodynamic function."""


@dataclass(frozen=True)
class ThermoReport:
    """Reduced thermodynamic values of one configuration profile."""

    enthalpy: float
    entropy: float
    free_energy: float
    eps1: float
    h: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _lf(values: ArrayLike) -> NDArray[np.float64]:
    v = np.asarray(values, dtype=float)
    return np.asarray(xlogy(v, v))


def enthalpy_terms(z: ArrayLike, eps1: float) -> NDArray[np.float64]:
    """``eps1 * (-z1 + z3 + z4 - z6)`` along the last axis."""
    return np.asarray(eps1 * (np.asarray(z, dtype=float) @ ENTHALPY_WEIGHTS))


def entropy_terms(
    x: ArrayLike, y: ArrayLike, w: ArrayLike, z: ArrayLike
) -> NDArray[np.float64]:
    """Reduced CVM entropy along the last axis, without range checks."""
    return np.asarray(
        2.0 * (_lf(y) @ BETA)
        + _lf(w) @ BETA
        - _lf(x).sum(axis=-1)
        - 2.0 * (_lf(z) @ GAMMA)
    )


def _check_range(cv: ConfigVars) -> None:
    for name in ("x", "y", "w", "z"):
        values = np.asarray(getattr(cv, name))
        if (values < -_RANGE_TOL).any() or (values > 1.0 + _RANGE_TOL).any():
            raise CvmDomainError(f"{name} fractions must lie in [0, 1], got {list(values)}")
        if (values < 0.0).any() or (values > 1.0).any():
            _logger.debug("Clipping %s fractions within rounding tolerance: %s", name, values)


def enthalpy_cvm(cv: ConfigVars, eps1: float) -> float:
    return float(enthalpy_terms(cv.z, eps1))


def entropy_cvm(cv: ConfigVars) -> float:
    """Reduced entropy of a configuration profile.

    :raises CvmDomainError: when a fraction is below 0 or above 1.
    """
    _check_range(cv)
    x, y, w, z = (np.clip(getattr(cv, n), 0.0, 1.0) for n in ("x", "y", "w", "z"))
    return float(entropy_terms(x, y, w, z))


def free_energy_cvm(cv: ConfigVars, eps1: float) -> ThermoReport:
    """Enthalpy, entropy and ``F = H - S`` for ``cv`` at interaction enthalpy ``eps1``.

    The normalization and pair-balance constraints are not added as Lagrange terms:
    counted profiles satisfy them already.
    """
    enthalpy = enthalpy_cvm(cv, eps1)
    entropy = entropy_cvm(cv)
    return ThermoReport(
        enthalpy=enthalpy,
        entropy=entropy,
        free_energy=enthalpy - entropy,
        eps1=float(eps1),
        h=h_from_eps(eps1),
    )


def h_from_eps(eps1: float) -> float:
    """``h = exp(2 eps1)``."""
    return math.exp(2.0 * eps1)


def eps_from_h(h: float) -> float:
    """``eps1 = ln(h) / 2``.

    :raises CvmDomainError: for ``h <= 0``.
    """
    if not h > 0.0:
        raise CvmDomainError(f"h must be positive, got {h}")
    return math.log(h) / 2.0


def grid_eps_from_h(h: float) -> float:
    """Interaction at which swap minimization relaxes a grid onto the profile of ``h``.

    The equilibrium profiles of :mod:`cvmfe.thermo.equilibrium` are stationary under the
    triplet coefficient ``ln h``, so a grid minimized at ``eps1 = ln h`` settles where
    :func:`~cvmfe.thermo.equilibrium.estimate_h` returns ``h``. This is twice
    :func:`eps_from_h`.

    :raises CvmDomainError: for ``h <= 0``.
    """
    return 2.0 * eps_from_h(h)


def grid_h_from_eps(eps1: float) -> float:
    """Equilibrium ``h`` a grid minimized at ``eps1`` relaxes onto, ``exp(eps1)``."""
    return math.exp(eps1)
