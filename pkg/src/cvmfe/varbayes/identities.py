#!/usr/bin/env python
# coding=utf-8

# -------------------------------------------------------------------------------
# Name:        identities.py
# Purpose:     Variational free energy of discrete models and its decompositions
#
# Created:     05-03-2026
# Licence:     refer to the LICENSE file
# -------------------------------------------------------------------------------
"""Variational free energy over a finite external state space.

For a candidate ``q`` over external states and a blanket state ``j``::

    F = sum_i q_i ln(q_i / p(i, j))
      = E_q[-ln p(i, j)] - H[q]                  (energy minus entropy)
      = -ln p(j) + KL(q || p(. | j))             (surprisal plus divergence)

``F`` is bounded below by the surprisal. In the opposite sign convention the same
statement reads ``ln p(j) >= -F``; :func:`jensen_chain_check` reports both sides and
the gap, which is the posterior divergence.

Support violations raise instead of returning infinities.
"""

__all__ = [
    "IDENTITY_TOLERANCE",
    "FreeEnergyDecomposition",
    "JensenChain",
    "DivergenceInfiniteError",
    "InfiniteSurprisalError",
    "IdentityViolationError",
    "kl_divergence",
    "shannon_entropy",
    "surprisal",
    "expected_energy",
    "variational_free_energy",
    "elbo",
    "decompose",
    "jensen_chain_check",
    "mix_with_uniform",
]

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np
from numpy.typing import NDArray
from scipy.special import xlogy

from .distributions import DiscreteJoint, Distribution, conditional_from_joint

_logger = logging.getLogger("cvmfe.Identities")

IDENTITY_TOLERANCE = 1e-10


class DivergenceInfiniteError(ArithmeticError):
    """``q`` puts mass where the reference distribution has none."""


class InfiniteSurprisalError(ArithmeticError):
    """The observed blanket state has zero probability."""


class IdentityViolationError(ArithmeticError):
    """Two routes to the same free energy disagree beyond tolerance."""


@dataclass(frozen=True)
class FreeEnergyDecomposition:
    """Every term of both free-energy decompositions for one ``(q, joint, j)``."""

    free_energy: float
    expected_energy: float
    entropy_q: float
    surprisal_l: float
    kl_posterior: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class JensenChain:
    """``lhs = ln p(j)`` against ``rhs = -F``; ``gap = lhs - rhs >= 0``."""

    lhs: float
    rhs: float
    gap: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _support_check(q: NDArray[np.float64], ref: NDArray[np.float64], what: str) -> None:
    if q.shape != ref.shape:
        raise ValueError(f"outcome sets differ: {q.shape[0]} vs {ref.shape[0]} states")
    if ((q > 0.0) & (ref <= 0.0)).any():
        _logger.debug(
            "Support violation against %s at outcomes %s",
            what,
            np.flatnonzero((q > 0.0) & (ref <= 0.0)).tolist(),
        )
        raise DivergenceInfiniteError(f"q has mass outside the support of {what}")


def kl_divergence(q: Distribution, p: Distribution) -> float:
    """``KL(q || p) = sum q ln(q / p)`` with ``0 ln 0 = 0``.

    :raises DivergenceInfiniteError: when ``q_i > 0`` and ``p_i = 0``.
    """
    _support_check(q.probs, p.probs, "p")
    mask = q.probs > 0.0
    value = math.fsum(q.probs[mask] * np.log(q.probs[mask] / p.probs[mask]))
    return max(value, 0.0)


def shannon_entropy(d: Distribution) -> float:
    return -math.fsum(xlogy(d.probs, d.probs))


def surprisal(joint: DiscreteJoint, j: int) -> float:
    """``-ln p(j)``.

    :raises InfiniteSurprisalError: when ``p(j) = 0``.
    """
    evidence = joint.evidence(j)
    if evidence <= 0.0:
        raise InfiniteSurprisalError(f"blanket state {j} has zero probability")
    return -math.log(evidence)


def expected_energy(q: Distribution, joint: DiscreteJoint, j: int) -> float:
    """``E_q[-ln p(i, j)]``."""
    column = joint.column(j)
    _support_check(q.probs, column, f"joint column {j}")
    mask = q.probs > 0.0
    return -math.fsum(q.probs[mask] * np.log(column[mask]))


def variational_free_energy(q: Distribution, joint: DiscreteJoint, j: int) -> float:
    """``F = sum_i q_i ln(q_i / p(i, j))``.

    :raises DivergenceInfiniteError: when ``q`` has mass where column ``j`` is zero.
    """
    column = joint.column(j)
    _support_check(q.probs, column, f"joint column {j}")
    mask = q.probs > 0.0
    return math.fsum(q.probs[mask] * np.log(q.probs[mask] / column[mask]))


def elbo(q: Distribution, joint: DiscreteJoint, j: int) -> float:
    """Evidence lower bound, ``-F``."""
    return -variational_free_energy(q, joint, j)


def _agree(a: float, b: float, what: str) -> None:
    if abs(a - b) > IDENTITY_TOLERANCE * max(1.0, abs(a), abs(b)):
        _logger.error("Identity check failed for %s", what)
        raise IdentityViolationError(f"{what}: {a!r} != {b!r}")


def decompose(q: Distribution, joint: DiscreteJoint, j: int) -> FreeEnergyDecomposition:
    """Evaluate ``F`` directly and through both decompositions.

    :raises IdentityViolationError: when the three values of ``F`` disagree.
    """
    free_energy = variational_free_energy(q, joint, j)
    energy = expected_energy(q, joint, j)
    entropy = shannon_entropy(q)
    surprisal_l = surprisal(joint, j)
    kl_post = kl_divergence(q, conditional_from_joint(joint, j))
    _agree(free_energy, energy - entropy, "F vs energy - entropy")
    _agree(free_energy, surprisal_l + kl_post, "F vs surprisal + KL")
    return FreeEnergyDecomposition(
        free_energy=free_energy,
        expected_energy=energy,
        entropy_q=entropy,
        surprisal_l=surprisal_l,
        kl_posterior=kl_post,
    )


def jensen_chain_check(joint: DiscreteJoint, j: int, q: Distribution) -> JensenChain:
    """Check ``ln p(j) >= -F`` and that the gap equals the posterior divergence.

    :raises IdentityViolationError: when the bound fails or the gap differs from
        the divergence.
    """
    parts = decompose(q, joint, j)
    lhs = -parts.surprisal_l
    rhs = -parts.free_energy
    gap = lhs - rhs
    if gap < -IDENTITY_TOLERANCE:
        raise IdentityViolationError(f"evidence bound violated: ln p = {lhs!r} < -F = {rhs!r}")
    _agree(gap, parts.kl_posterior, "Jensen gap vs posterior divergence")
    return JensenChain(lhs=lhs, rhs=rhs, gap=gap)


def mix_with_uniform(q: Distribution, weight: float) -> Distribution:
    """``(1 - weight) q + weight / n``."""
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {weight}")
    return Distribution.normalized((1.0 - weight) * q.probs + weight / q.size)
