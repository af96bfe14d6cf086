"""Piecewise-constant noise trajectories and deterministic seeding.

A trajectory is one realization of beta(t) or delta_Gamma(t): constant
on grid cells of a fixed period whose phase (offset) is drawn uniformly
per trial, so noise steps are not synchronized with the pulse sequence
and can land anywhere inside its intervals.

Streams are derived from a single master seed through spawn keys
(point, trial, field), which makes every trajectory a pure function of
the experiment coordinates, independent of worker count or execution
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, TrajectoryRangeError

FIELD_BETA = 0
FIELD_DELTA_GAMMA = 1


@dataclass(frozen=True)
class Zero:
    """Identically zero field."""


@dataclass(frozen=True)
class ConstantValue:
    """Time-independent field of the given value (rad/s)."""

    value: float


@dataclass(frozen=True)
class GaussianPiecewise:
    """Zero-mean Gaussian samples of std sigma, piecewise constant.

    period None means "resolve to 2*tau at compile time": one noise
    cell per protected cycle, fixed only once the sweep point sets tau.
    """

    sigma: float
    period: Union[float, None] = None

    def __post_init__(self):
        if self.sigma < 0.0:
            raise DomainError("GaussianPiecewise requires sigma >= 0")
        if self.period is not None and not self.period > 0.0:
            raise DomainError("noise period must be positive")


@dataclass(frozen=True)
class UniformPiecewise:
    """Uniform samples on [0, w], piecewise constant; period as above."""

    w: float
    period: Union[float, None] = None

    def __post_init__(self):
        if self.w < 0.0:
            raise DomainError("UniformPiecewise requires w >= 0")
        if self.period is not None and not self.period > 0.0:
            raise DomainError("noise period must be positive")


NoiseModel = Union[Zero, ConstantValue, GaussianPiecewise, UniformPiecewise]


@dataclass(frozen=True)
class NoiseTrajectory:
    """One sampled realization covering [0, duration].

    values[k] rules the cell [offset + (k-1)*period, offset + k*period);
    values[0] rules everything before the offset.  Constant and zero
    fields use an infinite period and a single value.
    """

    offset: float
    period: float
    values: np.ndarray
    duration: float

    def value_at(self, t: float) -> float:
        """Field value at time t; right-continuous at grid breakpoints."""
        if t < 0.0 or t > self.duration * (1.0 + 1e-12) + 1e-30:
            raise TrajectoryRangeError(
                f"t={t!r} outside trajectory window [0, {self.duration!r}]"
            )
        if math.isinf(self.period):
            return float(self.values[0])
        idx = math.floor((t - self.offset) / self.period) + 1
        if idx < 0 or idx >= len(self.values):
            raise TrajectoryRangeError(
                f"trajectory does not cover t={t!r} (index {idx})"
            )
        return float(self.values[idx])

    def breakpoints_in(self, a: float, b: float) -> list[float]:
        """Grid times strictly inside (a, b), in increasing order."""
        if math.isinf(self.period):
            return []
        out = []
        k = math.floor((a - self.offset) / self.period) + 1
        # guard against zero-length slivers from floating-point ties
        eps = 1e-15 * self.period
        while True:
            x = self.offset + k * self.period
            if x >= b - eps:
                return out
            if x > a + eps:
                out.append(x)
            k += 1


def sample_trajectory(
    model: NoiseModel, duration: float, rng: np.random.Generator
) -> NoiseTrajectory:
    """Draw one trajectory covering [0, duration].

    The grid offset is uniform on [0, period); then enough i.i.d. values
    are drawn, in time order, to cover the window.  Constant and zero
    models consume no randomness at all.
    """
    if duration < 0.0:
        raise DomainError("trajectory duration must be >= 0")
    if isinstance(model, Zero):
        return NoiseTrajectory(0.0, math.inf, np.zeros(1), duration)
    if isinstance(model, ConstantValue):
        return NoiseTrajectory(0.0, math.inf, np.array([model.value]), duration)
    if model.period is None:
        raise DomainError("noise period unresolved; set it or let the engine derive 2*tau")
    period = float(model.period)
    offset = float(rng.uniform(0.0, period))
    count = int(math.ceil((duration + offset) / period)) + 1
    if isinstance(model, GaussianPiecewise):
        values = rng.normal(0.0, model.sigma, count)
    else:
        values = rng.uniform(0.0, model.w, count)
    return NoiseTrajectory(offset, period, values, duration)


@dataclass(frozen=True)
class SeedPolicy:
    """Master seed plus the stream-labeling discipline.

    Distinct (point, trial, field) triples map to independent streams;
    the same triple always reproduces the same stream, on any worker.
    """

    master_seed: int

    def stream(self, point: int, trial: int, field: int) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self.master_seed, spawn_key=(point, trial, field)
        )
        return np.random.default_rng(seq)


def trial_stream(
    policy: SeedPolicy, point: int, trial: int, field: int
) -> np.random.Generator:
    """Stream for one (parameter point, trial, noise field) triple."""
    return policy.stream(point, trial, field)
