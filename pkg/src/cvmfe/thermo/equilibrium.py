#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        equilibrium.py
# Purpose:     Equilibrium configuration profiles at x1 = 0.5 and h inversion
#
# Created:     03-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Equilibrium profiles of the 2-D CVM at ``x1 = x2 = 0.5``.

Only ``z3`` has a closed form in ``h``::

    z3 = (h - 3)(h + 1) / (8 (h^2 - 6h + 1))

On the equilibrium manifold every profile is a function of the six triplet
fractions. Pair fractions come from marginalizing the triplets (the two chevron
ends form a w-bond, each end with the centre forms a y-bond) and the constraints
are ``sum(gamma z) = 1``, ``z2 + z4 = z3 + z5`` and ``x1 = 0.5``.
:func:`analytic_equilibrium` minimizes the free energy over that manifold with the
interaction coefficient ``ln h``, at which the stationary ``z3`` is the closed form
above. Each site carries two nearest-neighbour bonds, so a grid minimized with
:func:`~cvmfe.thermo.cvm_free_energy.free_energy_cvm` at ``eps1`` relaxes towards
the profile of ``exp(eps1)``.

The symmetric solution also has a closed form once ``z3`` is known, which
:func:`analytic_profile` evaluates and :func:`estimate_h` inverts by bisection.
"""

__all__ = [
    "VALIDITY_WINDOW",
    "HEstimate",
    "SingularityError",
    "OutOfValidityError",
    "EstimationFailureError",
    "EquilibriumNotConvergedError",
    "analytic_z3",
    "analytic_profile",
    "analytic_equilibrium",
    "analytic_curve",
    "estimate_h",
    "profile_variable",
]

import logging
import math
from typing import Callable, Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, cho_factor, cho_solve, null_space
from scipy.optimize import bisect

from ..lattice.config_vars import BETA, GAMMA, ConfigVars
from .cvm_free_energy import ENTHALPY_WEIGHTS, CvmDomainError, entropy_terms

_logger = logging.getLogger("cvmfe.Equilibrium")

VALIDITY_WINDOW: Tuple[float, float] = (1.0 / 1.6, 1.6)
SINGULARITY_TOL = 1e-9
_SINGULAR_ROOTS = (3.0 - 2.0 * math.sqrt(2.0), 3.0 + 2.0 * math.sqrt(2.0))
X1_TOLERANCE = 0.05
DESCRIPTIVE_VARIABLES = ("z1", "z3", "y2")

# marginalization of the triplet fractions z1..z6
_AX = np.array([[1, 2, 0, 1, 0, 0], [0, 0, 1, 0, 2, 1]], dtype=float)
_AY = np.array([[1, 1, 0, 0, 0, 0], [0, 0.5, 0.5, 0.5, 0.5, 0], [0, 0, 0, 0, 1, 1]])
_AW = np.array([[1, 0, 1, 0, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 0, 1, 0, 1]], dtype=float)
_CONSTRAINTS = np.array(
    [GAMMA, [0, 1, -1, 1, -1, 0], [1, 2, 0, 1, 0, 0]], dtype=float
)
_BASIS = null_space(_CONSTRAINTS)
_SYMMETRY_POINT = np.full(6, 0.125)


class SingularityError(ArithmeticError):
    """``h`` sits on a root of the closed-form denominator."""


class OutOfValidityError(ValueError):
    """``h`` lies outside the window where the analytic solution is trusted."""

    def __init__(self, h: float, window: Tuple[float, float] = VALIDITY_WINDOW) -> None:
        self.h = h
        self.window = window
        super().__init__(f"h = {h} is outside the validity window [{window[0]}, {window[1]}]")


class EstimationFailureError(ArithmeticError):
    """No configuration variable could be inverted inside the validity window."""

    def __init__(self, attempted: Sequence[str]) -> None:
        self.attempted = list(attempted)
        super().__init__(
            f"no h found in {list(VALIDITY_WINDOW)} for variables {self.attempted}"
        )


class EquilibriumNotConvergedError(ArithmeticError):
    """The equilibrium solver stopped before reaching its gradient tolerance."""


class HEstimate(NamedTuple):
    """Mean h and the per-variable candidates that produced it."""

    h_mean: float
    candidates: List[Tuple[str, float]]


def analytic_z3(h: float) -> float:
    """Closed-form equilibrium ``z3`` at ``x1 = 0.5``.

    :raises CvmDomainError: for ``h <= 0``.
    :raises SingularityError: within 1e-9 of ``3 - 2 sqrt(2)`` or ``3 + 2 sqrt(2)``.
    """
    if not h > 0.0:
        raise CvmDomainError(f"h must be positive, got {h}")
    for root in _SINGULAR_ROOTS:
        if abs(h - root) < SINGULARITY_TOL:
            raise SingularityError(f"z3(h) diverges at h = {root:.9f}")
    return (h - 3.0) * (h + 1.0) / (8.0 * (h * h - 6.0 * h + 1.0))


def _check_window(h: float) -> None:
    low, high = VALIDITY_WINDOW
    if not low <= h <= high:
        raise OutOfValidityError(h)


def _from_triplets(z: NDArray[np.float64]) -> ConfigVars:
    return ConfigVars(
        x=tuple(_AX @ z),  # type: ignore[arg-type]
        y=tuple(_AY @ z),  # type: ignore[arg-type]
        w=tuple(_AW @ z),  # type: ignore[arg-type]
        z=tuple(z),  # type: ignore[arg-type]
    )


def analytic_profile(h: float) -> ConfigVars:
    """Closed-form symmetric equilibrium profile.

    With ``z1 = z6 = a``, ``z2 = z5 = b`` and ``z3 = z4 = c`` stationarity reduces to
    ``(a + c) b = 2ac`` and ``a + 2b + c = 1/2``, solved here for ``c = z3(h)``.
    """
    _check_window(h)
    c = analytic_z3(h)
    half_gap = 0.5 - 4.0 * c
    s = 0.5 * (half_gap + math.sqrt(half_gap * half_gap + 16.0 * c * c))
    a = s - c
    b = 0.5 * (0.5 - s)
    return _from_triplets(np.array([a, b, c, c, b, a]))


def _objective(z: NDArray[np.float64], coef: float) -> float:
    entropy = entropy_terms(_AX @ z, _AY @ z, _AW @ z, z)
    return float(coef * (ENTHALPY_WEIGHTS @ z) - entropy)


def _gradient(z: NDArray[np.float64], coef: float) -> NDArray[np.float64]:
    x, y, w = _AX @ z, _AY @ z, _AW @ z
    d_entropy = (
        2.0 * _AY.T @ (BETA * (np.log(y) + 1.0))
        + _AW.T @ (BETA * (np.log(w) + 1.0))
        - _AX.T @ (np.log(x) + 1.0)
        - 2.0 * GAMMA * (np.log(z) + 1.0)
    )
    return np.asarray(coef * ENTHALPY_WEIGHTS - d_entropy)


def _hessian(z: NDArray[np.float64]) -> NDArray[np.float64]:
    x, y, w = _AX @ z, _AY @ z, _AW @ z
    d2_entropy = (
        2.0 * _AY.T @ np.diag(BETA / y) @ _AY
        + _AW.T @ np.diag(BETA / w) @ _AW
        - _AX.T @ np.diag(1.0 / x) @ _AX
        - 2.0 * np.diag(GAMMA / z)
    )
    return np.asarray(-d2_entropy)


def _newton_direction(
    hess: NDArray[np.float64], grad: NDArray[np.float64]
) -> NDArray[np.float64]:
    damping = 0.0
    scale = max(1.0, float(np.abs(hess).max()))
    while True:
        try:
            factor = cho_factor(hess + damping * np.eye(len(grad)))
            return np.asarray(-cho_solve(factor, grad))
        except LinAlgError:
            damping = max(1e-8 * scale, 10.0 * damping)
            _logger.debug("Hessian not positive definite, damping %.3g", damping)


def analytic_equilibrium(h: float, tol: float = 1e-10, max_iter: int = 100) -> ConfigVars:
    """Full equilibrium profile for ``h`` inside the validity window.

    Damped Newton on the constraint manifold, started from the ``h = 1`` symmetry
    point and stopped once the reduced gradient norm drops below ``tol``.

    :raises OutOfValidityError: ``h`` outside ``VALIDITY_WINDOW``.
    :raises EquilibriumNotConvergedError: tolerance not reached in ``max_iter`` steps.
    """
    _check_window(h)
    coef = math.log(h)
    z = _SYMMETRY_POINT.copy()
    for iteration in range(max_iter):
        grad = _BASIS.T @ _gradient(z, coef)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm < tol:
            _logger.debug("Equilibrium for h=%g after %d Newton steps", h, iteration)
            return _from_triplets(z)
        step = _BASIS @ _newton_direction(_BASIS.T @ _hessian(z) @ _BASIS, grad)
        current = _objective(z, coef)
        t = 1.0
        while True:
            trial = z + t * step
            if (trial > 0.0).all() and _objective(trial, coef) <= current + 1e-14 * max(
                1.0, abs(current)
            ):
                break
            t *= 0.5
            if t < 1e-12:
                raise EquilibriumNotConvergedError(
                    f"line search failed at h={h}, gradient norm {grad_norm:.3g}"
                )
        z = trial
    raise EquilibriumNotConvergedError(
        f"no convergence for h={h} in {max_iter} iterations"
    )


_VARIABLE_GETTERS: Dict[str, Callable[[ConfigVars], float]] = {
    **{f"x{i + 1}": (lambda cv, i=i: cv.x[i]) for i in range(2)},
    **{f"y{i + 1}": (lambda cv, i=i: cv.y[i]) for i in range(3)},
    **{f"w{i + 1}": (lambda cv, i=i: cv.w[i]) for i in range(3)},
    **{f"z{i + 1}": (lambda cv, i=i: cv.z[i]) for i in range(6)},
}


def profile_variable(cv: ConfigVars, name: str) -> float:
    """Configuration variable by name, e.g. ``"z3"`` or ``"y2"``."""
    try:
        return _VARIABLE_GETTERS[name](cv)
    except KeyError:
        raise ValueError(f"unknown configuration variable {name!r}") from None


def analytic_curve(names: Sequence[str], h_values: Sequence[float]) -> pd.DataFrame:
    """Tabulate equilibrium configuration variables against h."""
    rows = []
    for h in h_values:
        cv = analytic_profile(float(h))
        rows.append({"h": float(h), **{n: profile_variable(cv, n) for n in names}})
    return pd.DataFrame(rows, columns=["h", *names])


def _invert(name: str, target: float) -> float:
    low, high = VALIDITY_WINDOW

    def residual(h: float) -> float:
        return profile_variable(analytic_profile(h), name) - target

    r_low, r_high = residual(low), residual(high)
    if r_low == 0.0:
        return low
    if r_high == 0.0:
        return high
    if r_low * r_high > 0.0:
        raise ValueError(f"{name} = {target} not reached inside the window")
    return float(bisect(residual, low, high, xtol=1e-13, rtol=1e-13, maxiter=200))


def estimate_h(cv: ConfigVars) -> HEstimate:
    """Estimate h from the z1, z3 and y2 fractions of a balanced profile.

    Each variable is inverted through the equilibrium profile by bisection over the
    validity window. Variables whose value the window never reaches are dropped and
    the remaining candidates are averaged.

    :raises CvmDomainError: when ``x1`` is more than 0.05 away from 0.5.
    :raises EstimationFailureError: when every variable is dropped.
    """
    if abs(cv.x1 - 0.5) > X1_TOLERANCE:
        raise CvmDomainError(f"h estimation needs x1 near 0.5, got {cv.x1}")
    candidates: List[Tuple[str, float]] = []
    for name in DESCRIPTIVE_VARIABLES:
        value = profile_variable(cv, name)
        try:
            candidates.append((name, _invert(name, value)))
        except ValueError:
            _logger.debug("Dropped %s = %.6f: outside the equilibrium range", name, value)
    if not candidates:
        raise EstimationFailureError(DESCRIPTIVE_VARIABLES)
    h_mean = float(np.mean([h for _, h in candidates]))
    _logger.debug("Estimated h=%.6f from %s", h_mean, candidates)
    return HEstimate(h_mean=h_mean, candidates=candidates)
