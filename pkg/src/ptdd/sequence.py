"""Pulse-sequence construction and average-Hamiltonian analysis.

Builds the unprotected, CPMG-like (s1) and CPMG (s2) cycles, compiles
them against noise trajectories into piecewise-constant schedules,
applies the toggling-frame transformation and evaluates the first two
Magnus (average Hamiltonian) orders.

Ordering convention: element lists are in time order, first element
acts first.  In operator products the rightmost factor therefore acts
first; the s1 cycle is pulse, free evolution, pulse, drive, i.e.
U = U(H, tau) P U(H_n, tau) P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvalidPulseError, TrajectoryRangeError
from .linalg import ID2
from .model import NoiseFields, PTParams, h_noise, h_total, pi_pulse_y
from .noise import NoiseTrajectory


class SequenceKind(enum.Enum):
    UNPROTECTED = "unprotected"
    CPMG_LIKE = "s1"
    CPMG = "s2"


class SegmentKind(enum.Enum):
    DRIVE = "drive"
    FREE_NOISE = "free"


@dataclass(frozen=True)
class Pulse:
    """Instantaneous unitary control pulse."""

    op: np.ndarray


@dataclass(frozen=True)
class Segment:
    kind: SegmentKind
    duration: float


@dataclass(frozen=True)
class CycleSpec:
    """One cycle: time-ordered pulses and segments, total duration tau_c."""

    elements: tuple
    tau_c: float


@dataclass(frozen=True)
class SequenceSpec:
    kind: SequenceKind
    tau: float
    m: int

    def __post_init__(self):
        if not self.tau > 0.0:
            raise DomainError("sequence spacing tau must be positive")
        if self.m < 1:
            raise DomainError("cycle count m must be >= 1")

    @property
    def effective_time(self) -> float:
        """Evolution time delivered under the ideal Hamiltonian: m*tau."""
        return self.m * self.tau

    @property
    def wall_time(self) -> float:
        """Physical duration: m*tau unprotected, 2*m*tau for s1 and s2."""
        if self.kind is SequenceKind.UNPROTECTED:
            return self.m * self.tau
        return 2.0 * self.m * self.tau


@dataclass(frozen=True)
class SchedulePiece:
    """Constant-generator slice of a compiled schedule."""

    kind: SegmentKind
    generator: np.ndarray
    duration: float


@dataclass(frozen=True)
class PiecewiseSchedule:
    """Time-ordered pulses and constant pieces covering wall_time."""

    elements: tuple
    wall_time: float


def build_cycle(kind: SequenceKind, tau: float) -> CycleSpec:
    """Cycle layout for one repetition of the chosen sequence.

    Unprotected is a single driven segment of length tau.  s1 wraps the
    free (noise-only) interval in a pulse pair and appends the drive;
    s2 splits the drive symmetrically around the echoed free interval,
    which makes the cycle its own time reverse.
    """
    if not tau > 0.0:
        raise DomainError("cycle spacing tau must be positive")
    p = Pulse(pi_pulse_y())
    if kind is SequenceKind.UNPROTECTED:
        return CycleSpec((Segment(SegmentKind.DRIVE, tau),), tau)
    if kind is SequenceKind.CPMG_LIKE:
        return CycleSpec(
            (p, Segment(SegmentKind.FREE_NOISE, tau), p, Segment(SegmentKind.DRIVE, tau)),
            2.0 * tau,
        )
    if kind is SequenceKind.CPMG:
        return CycleSpec(
            (
                Segment(SegmentKind.DRIVE, tau / 2.0),
                p,
                Segment(SegmentKind.FREE_NOISE, tau),
                p,
                Segment(SegmentKind.DRIVE, tau / 2.0),
            ),
            2.0 * tau,
        )
    raise DomainError(f"unknown sequence kind: {kind!r}")


def compile_schedule(
    seq: SequenceSpec,
    p: PTParams,
    beta_traj: NoiseTrajectory,
    dgamma_traj: NoiseTrajectory,
) -> PiecewiseSchedule:
    """Expand m cycles against the trajectories into constant pieces.

    Any segment containing a noise-grid breakpoint (of either field) is
    split there, so each piece sees strictly constant fields; the field
    value of a piece is the trajectory value at the piece start, which
    with right-continuous trajectories is the value ruling the whole
    piece.
    """
    cycle = build_cycle(seq.kind, seq.tau)
    wall = cycle.tau_c * seq.m
    for traj in (beta_traj, dgamma_traj):
        if traj.duration < wall * (1.0 - 1e-12):
            raise TrajectoryRangeError(
                f"trajectory covers {traj.duration!r} s but the schedule needs {wall!r} s"
            )
    out = []
    for c in range(seq.m):
        t = c * cycle.tau_c
        for el in cycle.elements:
            if isinstance(el, Pulse):
                out.append(el)
                continue
            a, b = t, t + el.duration
            cuts = sorted(
                set(beta_traj.breakpoints_in(a, b))
                | set(dgamma_traj.breakpoints_in(a, b))
            )
            edges = [a, *cuts, b]
            for lo, hi in zip(edges, edges[1:]):
                fields = NoiseFields(
                    beta=beta_traj.value_at(lo),
                    delta_gamma=dgamma_traj.value_at(lo),
                )
                if el.kind is SegmentKind.DRIVE:
                    gen = h_total(p, fields)
                else:
                    gen = h_noise(fields)
                out.append(SchedulePiece(el.kind, gen, hi - lo))
            t = b
    return PiecewiseSchedule(tuple(out), wall)


def toggle_frame(sched: PiecewiseSchedule) -> tuple[PiecewiseSchedule, np.ndarray]:
    """Absorb pulses into conjugated generators.

    Each piece generator becomes Q^dag H Q with Q the product of all
    pulses preceding the piece; the returned residual is the full pulse
    product, to be applied after the toggled (pulse-free) schedule:
    U_original = residual . U_toggled.
    """
    q = ID2.copy()
    out = []
    for el in sched.elements:
        if isinstance(el, Pulse):
            op = np.asarray(el.op, dtype=complex)
            if not np.allclose(op.conj().T @ op, ID2, atol=1e-9):
                raise InvalidPulseError("toggling frame requires unitary pulses")
            q = op @ q
        else:
            out.append(
                SchedulePiece(el.kind, q.conj().T @ el.generator @ q, el.duration)
            )
    return PiecewiseSchedule(tuple(out), sched.wall_time), q


def _pieces_only(sched: PiecewiseSchedule) -> list[SchedulePiece]:
    for el in sched.elements:
        if isinstance(el, Pulse):
            raise DomainError("average-Hamiltonian analysis requires a toggled (pulse-free) schedule")
    return list(sched.elements)


def magnus1(sched: PiecewiseSchedule) -> np.ndarray:
    """First-order average Hamiltonian: (1/T) sum_k H_k t_k."""
    pieces = _pieces_only(sched)
    total = sum(p.duration for p in pieces)
    if not total > 0.0:
        raise DomainError("magnus1 of a zero-duration schedule")
    acc = np.zeros((2, 2), dtype=complex)
    for p in pieces:
        acc += p.generator * p.duration
    return acc / total


def magnus2(sched: PiecewiseSchedule) -> np.ndarray:
    """Second-order term (1/(2i T)) sum_{j>k} [H_j, H_k] t_j t_k.

    The commutator puts the later segment first, matching the expansion
    the construction is built around; the opposite convention only
    flips the sign.  Vanishes whenever the toggled schedule is
    symmetric under time reversal.
    """
    pieces = _pieces_only(sched)
    total = sum(p.duration for p in pieces)
    if not total > 0.0:
        raise DomainError("magnus2 of a zero-duration schedule")
    acc = np.zeros((2, 2), dtype=complex)
    for j in range(1, len(pieces)):
        hj = pieces[j].generator
        tj = pieces[j].duration
        for k in range(j):
            hk = pieces[k].generator
            acc += (hj @ hk - hk @ hj) * (tj * pieces[k].duration)
    return acc / (2j * total)


def symmetry_check(cycle: CycleSpec) -> bool:
    """True iff the constant-noise schedule satisfies H(t) = H(tau_c - t).

    Structural palindrome test: under constant fields the generator of a
    piece depends only on its segment kind, so time-reversal symmetry
    reduces to the element list reading the same backwards.
    """
    sig = []
    for el in cycle.elements:
        if isinstance(el, Pulse):
            sig.append(("pulse",))
        else:
            sig.append((el.kind, el.duration))
    return sig == sig[::-1]


def dump_schedule(sched: PiecewiseSchedule) -> str:
    """Line-oriented schedule listing with stable field order.

    One line per element; entries printed at full precision.  Used by
    golden tests and the CLI debug path.
    """

    def fmt(z: complex) -> str:
        return f"{z.real:.17g}{z.imag:+.17g}j"

    lines = [f"schedule wall={sched.wall_time:.17g}"]
    for el in sched.elements:
        if isinstance(el, Pulse):
            ent = " ".join(fmt(complex(x)) for x in np.asarray(el.op).ravel())
            lines.append(f"pulse op=[{ent}]")
        else:
            ent = " ".join(fmt(complex(x)) for x in np.asarray(el.generator).ravel())
            lines.append(
                f"piece kind={el.kind.value} dur={el.duration:.17g} gen=[{ent}]"
            )
    return "\n".join(lines) + "\n"
