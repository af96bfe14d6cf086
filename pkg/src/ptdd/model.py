"""Hamiltonians, PT-phase classification and analytic time constants.

Unit convention: all frequencies are angular, in rad/s.  A parameter
quoted as "10 kHz" enters as 1e4 rad/s and "2000 pi Hz" as 2000*pi
rad/s.  This is the only reading that reproduces the derived gate times
(73.9 us for J=1e4, Gamma=1e3; 151.2 us for J=1e3, Gamma=500) and the
ideal-evolution period of about 316 us.

Basis ordering is (|0>, |1>); |1> is the lossy level of the passive
Hamiltonian.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PTParams:
    """Coupling J and effective loss Gamma, both in rad/s, both >= 0."""

    J: float
    Gamma: float

    def __post_init__(self):
        if not (self.J >= 0.0 and self.Gamma >= 0.0):
            raise DomainError("PTParams requires J >= 0 and Gamma >= 0")


@dataclass(frozen=True)
class NoiseFields:
    """Instantaneous noise field values in rad/s.

    alpha is carried for completeness but is zero in every experiment;
    only beta (detuning) and delta_gamma (loss fluctuation) are active.
    """

    beta: float = 0.0
    delta_gamma: float = 0.0
    alpha: float = 0.0


class Phase(enum.Enum):
    SYMMETRY_PRESERVING = "preserving"
    EXCEPTIONAL_POINT = "exceptional"
    SYMMETRY_BROKEN = "broken"


def h_pt(p: PTParams) -> np.ndarray:
    """2i*Gamma*Iz + 2J*Ix, the balanced gain-loss form."""
    return np.array(
        [[1j * p.Gamma, p.J], [p.J, -1j * p.Gamma]], dtype=complex
    )


def h_pt_passive(p: PTParams) -> np.ndarray:
    """h_pt - i*Gamma*I: pure loss on |1>, the experimentally realized form."""
    return np.array(
        [[0.0, p.J], [p.J, -2j * p.Gamma]], dtype=complex
    )


def h_noise(n: NoiseFields) -> np.ndarray:
    """Noise Hamiltonian [2i*dG + 2*beta]*Iz + alpha*Ix - i*dG*I.

    Entrywise: [[beta, alpha/2], [alpha/2, -beta - 2i*dG]].
    """
    return np.array(
        [
            [n.beta, n.alpha / 2.0],
            [n.alpha / 2.0, -n.beta - 2j * n.delta_gamma],
        ],
        dtype=complex,
    )


def h_total(p: PTParams, n: NoiseFields) -> np.ndarray:
    """Driven evolution with noise: h_pt_passive + h_noise."""
    return h_pt_passive(p) + h_noise(n)


def classify_phase(p: PTParams) -> Phase:
    """PT phase from the sign of J - Gamma, with a relative EP band.

    The exceptional point is detected within relative tolerance 1e-12;
    exact float equality would be meaningless at a phase boundary.
    """
    tol = 1e-12 * max(p.J, p.Gamma)
    if abs(p.Gamma - p.J) <= tol:
        return Phase.EXCEPTIONAL_POINT
    if p.Gamma < p.J:
        return Phase.SYMMETRY_PRESERVING
    return Phase.SYMMETRY_BROKEN


def not_gate_time(p: PTParams) -> float:
    """Population-inversion time (pi - 2 asin(G/J)) / (2J sqrt(1-(G/J)^2)).

    Shorter than the Hermitian pi/(2J) for Gamma > 0, and only defined
    in the symmetry-preserving phase.
    """
    if p.J <= p.Gamma:
        raise DomainError("NOT gate undefined at or past the exceptional point")
    r = p.Gamma / p.J
    return (math.pi - 2.0 * math.asin(r)) / (2.0 * p.J * math.sqrt(1.0 - r * r))


def ideal_period(p: PTParams) -> float:
    """Period pi/sqrt(J^2 - Gamma^2) of the normalized ideal evolution."""
    if p.J <= p.Gamma:
        raise DomainError("ideal evolution is aperiodic at or past the exceptional point")
    return math.pi / math.sqrt(p.J * p.J - p.Gamma * p.Gamma)


def pi_pulse_y() -> np.ndarray:
    """exp(-i*pi*Iy) = [[0, -1], [1, 0]]; squares to -I."""
    return np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
