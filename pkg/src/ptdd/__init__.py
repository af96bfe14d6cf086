"""Dynamical-decoupling protection of PT-symmetric qubit evolutions.

Simulates a driven qubit whose effective two-level Hamiltonian is
non-Hermitian but PT symmetric, with a passive (trace-shifted) variant
used throughout.  Pulse sequences built from instantaneous pi rotations
suppress quasistatic detuning and loss-rate noise; the package provides
the cycle compiler, a toggling-frame average-Hamiltonian expansion,
closed-form 2x2 propagators, Monte Carlo noise ensembles, and a CLI.

All frequencies are angular (rad/s).  Where experiment descriptions
quote "kHz", multiply by 1e3; quoted "Hz" values are already rad/s.
"""

from .errors import (
    ConfigError,
    DegenerateStateError,
    DomainError,
    InvalidPulseError,
    TrajectoryRangeError,
)
from .linalg import (
    dm_from_state,
    dm_normalize,
    expm_closed,
    expm_series,
    pauli_compose,
    pauli_decompose,
)
from .model import (
    NoiseFields,
    Phase,
    PTParams,
    classify_phase,
    h_noise,
    h_pt,
    h_pt_passive,
    h_total,
    ideal_period,
    not_gate_time,
    pi_pulse_y,
)
from .noise import (
    ConstantValue,
    GaussianPiecewise,
    NoiseTrajectory,
    SeedPolicy,
    UniformPiecewise,
    Zero,
    sample_trajectory,
)
from .sequence import (
    SequenceKind,
    SequenceSpec,
    build_cycle,
    compile_schedule,
    magnus1,
    magnus2,
    symmetry_check,
    toggle_frame,
)
from .engine import (
    EnsembleResult,
    SweepAxis,
    SweepSpec,
    TrialConfig,
    fidelity,
    ideal_density,
    propagate,
    run_ensemble,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConstantValue",
    "DegenerateStateError",
    "DomainError",
    "EnsembleResult",
    "GaussianPiecewise",
    "InvalidPulseError",
    "NoiseFields",
    "NoiseTrajectory",
    "PTParams",
    "Phase",
    "SeedPolicy",
    "SequenceKind",
    "SequenceSpec",
    "SweepAxis",
    "SweepSpec",
    "TrajectoryRangeError",
    "TrialConfig",
    "UniformPiecewise",
    "Zero",
    "build_cycle",
    "classify_phase",
    "compile_schedule",
    "dm_from_state",
    "dm_normalize",
    "expm_closed",
    "expm_series",
    "fidelity",
    "h_noise",
    "h_pt",
    "h_pt_passive",
    "h_total",
    "ideal_density",
    "ideal_period",
    "magnus1",
    "magnus2",
    "not_gate_time",
    "pauli_compose",
    "pauli_decompose",
    "pi_pulse_y",
    "propagate",
    "run_ensemble",
    "run_sweep",
    "sample_trajectory",
    "symmetry_check",
    "toggle_frame",
]
