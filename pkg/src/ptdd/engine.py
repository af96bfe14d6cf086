"""Ensemble propagation, fidelity and deterministic parameter sweeps.

A Monte Carlo run is organized as points x trials x noise fields.
Every random stream is a pure function of (master seed, point index,
trial index, field), and reductions happen in a fixed order (trials
grouped into fixed chunks and batches, merged by index, never by
completion), so results are byte-identical for any worker count.

When several sequence kinds are requested at one point, each trial
samples its trajectories once, over the longest wall time among the
kinds, and feeds the same realization to all of them: the protected
and unprotected curves are paired per trial, as in the side-by-side
figure comparisons.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import kernel
from .errors import DegenerateStateError, DomainError
from .linalg import dm_from_state, dm_normalize, expm_closed
from .model import PTParams, h_pt_passive
from .noise import (
    FIELD_BETA,
    FIELD_DELTA_GAMMA,
    ConstantValue,
    GaussianPiecewise,
    NoiseModel,
    NoiseTrajectory,
    SeedPolicy,
    UniformPiecewise,
    Zero,
    sample_trajectory,
)
from .sequence import (
    PiecewiseSchedule,
    Pulse,
    SequenceKind,
    SequenceSpec,
    SegmentKind,
)

# fidelity spread is the std over this many contiguous trial batches
N_BATCHES = 10
# fixed chunking for the trial loop; part of the reduction order, do not
# tie it to the worker count
CHUNK = 512
# squared-norm floor below which a trial counts as total population loss
NORM2_FLOOR = 1e-300

AXIS_NAMES = ("tau", "J", "beta", "sigma", "w")
NORMALIZATION_MODES = ("per-trial", "post-average")


@dataclass(frozen=True)
class TrialConfig:
    params: PTParams
    sequence: SequenceSpec
    beta_model: NoiseModel
    dgamma_model: NoiseModel
    psi0: tuple

    def __post_init__(self):
        v = np.asarray(self.psi0, dtype=complex).reshape(2)
        if not float(np.vdot(v, v).real) > 0.0:
            raise DomainError("initial state must have nonzero norm")


@dataclass(frozen=True)
class EnsembleResult:
    rho_avg: np.ndarray
    fidelity: float
    n_trials: int
    n_failed: int
    fidelity_spread: float


@dataclass(frozen=True)
class SweepAxis:
    name: str
    values: tuple

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise DomainError(f"unknown sweep axis {self.name!r}; choose from {AXIS_NAMES}")
        if len(self.values) < 1:
            raise DomainError(f"sweep axis {self.name!r} has no points")


@dataclass(frozen=True)
class SweepSpec:
    params: PTParams
    m: int
    tau: Optional[float]
    kinds: tuple
    beta_model: NoiseModel
    dgamma_model: NoiseModel
    psi0: tuple
    axes: tuple
    n_trials: int
    seed: int
    normalization: str = "per-trial"

    def __post_init__(self):
        if self.n_trials < 1:
            raise DomainError("trial count must be >= 1")
        if len(self.axes) > 2:
            raise DomainError("at most two sweep axes are supported")
        if self.normalization not in NORMALIZATION_MODES:
            raise DomainError(f"unknown normalization mode {self.normalization!r}")
        if not self.kinds:
            raise DomainError("at least one sequence kind is required")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise DomainError("duplicate sweep axis")
        if self.tau is None and "tau" not in names:
            raise DomainError("tau must be fixed or swept")


@dataclass(frozen=True)
class SweepPoint:
    values: tuple
    results: dict


def propagate(sched: PiecewiseSchedule, psi0) -> np.ndarray:
    """Apply every piece and pulse in time order; no normalization.

    Raises DegenerateStateError (via the norm floor) when the final
    squared norm is below 1e-300, i.e. the population is entirely lost.
    """
    codes, gens, durs = _flatten(sched)
    v = np.asarray(psi0, dtype=complex).reshape(2)
    c0, c1 = kernel.propagate_flat(codes, gens, durs, complex(v[0]), complex(v[1]))
    n2 = c0.real * c0.real + c0.imag * c0.imag + c1.real * c1.real + c1.imag * c1.imag
    if not (n2 > NORM2_FLOOR) or not math.isfinite(n2):
        raise DegenerateStateError("propagation lost all population (norm below 1e-150)")
    return np.array([c0, c1], dtype=complex)


def ideal_density(p: PTParams, T: float, psi0) -> np.ndarray:
    """Normalized rho after time T under the passive ideal Hamiltonian."""
    if T < 0.0:
        raise DomainError("ideal evolution time must be >= 0")
    u = expm_closed(h_pt_passive(p), T)
    v = u @ np.asarray(psi0, dtype=complex).reshape(2)
    return dm_normalize(dm_from_state(v))


def fidelity(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """|tr(a b)| / sqrt(tr(a^2) tr(b^2)), the normalized state overlap."""
    num = abs(complex(np.trace(rho_a @ rho_b)))
    den = math.sqrt(
        float(np.trace(rho_a @ rho_a).real) * float(np.trace(rho_b @ rho_b).real)
    )
    return num / den


def _flatten(sched: PiecewiseSchedule):
    n = len(sched.elements)
    codes = np.zeros(n, dtype=np.int8)
    gens = np.empty((n, 2, 2), dtype=complex)
    durs = np.zeros(n, dtype=float)
    for i, el in enumerate(sched.elements):
        if isinstance(el, Pulse):
            codes[i] = 1
            gens[i] = el.op
        else:
            gens[i] = el.generator
            durs[i] = el.duration
    return codes, gens, durs


def _resolve_period(model: NoiseModel, tau: float) -> NoiseModel:
    # default grid ties noise cells to the protected cycle: p = 2*tau
    if isinstance(model, (GaussianPiecewise, UniformPiecewise)) and model.period is None:
        return replace(model, period=2.0 * tau)
    return model


_PULSE_ROW = (0.0 + 0.0j, -1.0 + 0.0j, 1.0 + 0.0j, 0.0 + 0.0j)


def _layout(kind: SequenceKind, tau: float):
    if kind is SequenceKind.UNPROTECTED:
        return ((SegmentKind.DRIVE, tau),)
    if kind is SequenceKind.CPMG_LIKE:
        return (None, (SegmentKind.FREE_NOISE, tau), None, (SegmentKind.DRIVE, tau))
    return (
        (SegmentKind.DRIVE, tau / 2.0),
        None,
        (SegmentKind.FREE_NOISE, tau),
        None,
        (SegmentKind.DRIVE, tau / 2.0),
    )


def _compile_arrays(
    kind: SequenceKind,
    tau: float,
    m: int,
    p: PTParams,
    beta_traj: NoiseTrajectory,
    dgamma_traj: NoiseTrajectory,
):
    """Lean twin of sequence.compile_schedule emitting kernel arrays.

    Produces entrywise-identical generators and durations; equivalence
    against the object schedule path is asserted in the tests.
    """
    J = p.J
    G = p.Gamma
    layout = _layout(kind, tau)
    tau_c = tau if kind is SequenceKind.UNPROTECTED else 2.0 * tau
    codes = []
    rows = []
    durs = []
    for c in range(m):
        t = c * tau_c
        for item in layout:
            if item is None:
                codes.append(1)
                rows.append(_PULSE_ROW)
                durs.append(0.0)
                continue
            seg_kind, dur = item
            a, b = t, t + dur
            cuts = sorted(
                set(beta_traj.breakpoints_in(a, b))
                | set(dgamma_traj.breakpoints_in(a, b))
            )
            edges = [a, *cuts, b]
            for lo, hi in zip(edges, edges[1:]):
                beta = beta_traj.value_at(lo)
                dg = dgamma_traj.value_at(lo)
                if seg_kind is SegmentKind.DRIVE:
                    rows.append((beta + 0.0j, J + 0.0j, J + 0.0j, -beta - 2.0j * (G + dg)))
                else:
                    rows.append((beta + 0.0j, 0.0j, 0.0j, -beta - 2.0j * dg))
                codes.append(0)
                durs.append(hi - lo)
            t = b
    return (
        np.array(codes, dtype=np.int8),
        np.array(rows, dtype=complex).reshape(-1, 2, 2),
        np.array(durs, dtype=float),
    )


def _point_chunk(
    point_index: int,
    params: PTParams,
    tau: float,
    m: int,
    kinds: tuple,
    beta_model: NoiseModel,
    dgamma_model: NoiseModel,
    psi0: tuple,
    lo: int,
    hi: int,
    n_total: int,
    master_seed: int,
    normalization: str,
):
    """Trials [lo, hi) of one point: per-batch density sums per kind."""
    nb = min(N_BATCHES, n_total)
    policy = SeedPolicy(master_seed)
    wall_max = max(SequenceSpec(k, tau, m).wall_time for k in kinds)
    bmodel = _resolve_period(beta_model, tau)
    dmodel = _resolve_period(dgamma_model, tau)
    sums = {k: np.zeros((nb, 2, 2), dtype=complex) for k in kinds}
    counts = {k: np.zeros(nb, dtype=np.int64) for k in kinds}
    fails = {k: 0 for k in kinds}
    v = np.asarray(psi0, dtype=complex).reshape(2)
    a0, a1 = complex(v[0]), complex(v[1])
    per_trial = normalization == "per-trial"
    for trial in range(lo, hi):
        tb = sample_trajectory(
            bmodel, wall_max, policy.stream(point_index, trial, FIELD_BETA)
        )
        td = sample_trajectory(
            dmodel, wall_max, policy.stream(point_index, trial, FIELD_DELTA_GAMMA)
        )
        b = trial * nb // n_total
        for kind in kinds:
            codes, gens, durs = _compile_arrays(kind, tau, m, params, tb, td)
            c0, c1 = kernel.propagate_flat(codes, gens, durs, a0, a1)
            n2 = (
                c0.real * c0.real
                + c0.imag * c0.imag
                + c1.real * c1.real
                + c1.imag * c1.imag
            )
            if not (n2 > NORM2_FLOOR) or not math.isfinite(n2):
                fails[kind] += 1
                continue
            r01 = c0 * c1.conjugate()
            rho = np.array(
                [
                    [c0 * c0.conjugate(), r01],
                    [r01.conjugate(), c1 * c1.conjugate()],
                ],
                dtype=complex,
            )
            if per_trial:
                rho /= n2
            sums[kind][b] += rho
            counts[kind][b] += 1
    return sums, counts, fails


def _star_chunk(args):
    return _point_chunk(*args)


def _run_point(
    point_index: int,
    params: PTParams,
    tau: float,
    m: int,
    kinds: tuple,
    beta_model: NoiseModel,
    dgamma_model: NoiseModel,
    psi0: tuple,
    n_trials: int,
    master_seed: int,
    normalization: str,
    workers: int = 1,
) -> dict:
    """All trials of one parameter point; returns {kind: EnsembleResult}."""
    if n_trials < 1:
        raise DomainError("trial count must be >= 1")
    if normalization not in NORMALIZATION_MODES:
        raise DomainError(f"unknown normalization mode {normalization!r}")
    vpsi = np.asarray(psi0, dtype=complex).reshape(2)
    if tau == 0.0:
        # zero-duration limit: every kind reproduces the initial state
        rho0 = dm_normalize(dm_from_state(vpsi))
        res = EnsembleResult(rho0, 1.0, n_trials, 0, 0.0)
        return {k: res for k in kinds}
    nb = min(N_BATCHES, n_trials)
    rho_id = ideal_density(params, m * tau, vpsi)
    chunk_args = [
        (
            point_index,
            params,
            tau,
            m,
            kinds,
            beta_model,
            dgamma_model,
            tuple(vpsi),
            lo,
            min(lo + CHUNK, n_trials),
            n_trials,
            master_seed,
            normalization,
        )
        for lo in range(0, n_trials, CHUNK)
    ]
    if workers > 1 and len(chunk_args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_star_chunk, chunk_args))
    else:
        parts = [_point_chunk(*a) for a in chunk_args]
    out = {}
    for kind in kinds:
        bsum = np.zeros((nb, 2, 2), dtype=complex)
        bcount = np.zeros(nb, dtype=np.int64)
        failed = 0
        for sums, counts, fails in parts:  # fixed chunk order
            bsum += sums[kind]
            bcount += counts[kind]
            failed += fails[kind]
        n_ok = int(bcount.sum())
        if n_ok == 0:
            nanrho = np.full((2, 2), np.nan, dtype=complex)
            out[kind] = EnsembleResult(nanrho, float("nan"), n_trials, failed, float("nan"))
            continue
        total = bsum.sum(axis=0)
        if normalization == "per-trial":
            rho_avg = total / n_ok
        else:
            rho_avg = dm_normalize(total)
        fids = []
        for b in range(nb):
            if bcount[b] == 0:
                continue
            if normalization == "per-trial":
                rb = bsum[b] / bcount[b]
            else:
                rb = dm_normalize(bsum[b])
            fids.append(fidelity(rho_id, rb))
        out[kind] = EnsembleResult(
            rho_avg,
            fidelity(rho_id, rho_avg),
            n_trials,
            failed,
            float(np.std(fids)) if len(fids) > 1 else 0.0,
        )
    return out


def run_ensemble(
    cfg: TrialConfig,
    n_trials: int,
    policy: SeedPolicy,
    point_index: int = 0,
    normalization: str = "per-trial",
    workers: int = 1,
) -> EnsembleResult:
    """Monte Carlo ensemble at one parameter point for one sequence kind."""
    res = _run_point(
        point_index,
        cfg.params,
        cfg.sequence.tau,
        cfg.sequence.m,
        (cfg.sequence.kind,),
        cfg.beta_model,
        cfg.dgamma_model,
        tuple(np.asarray(cfg.psi0, dtype=complex).reshape(2)),
        n_trials,
        policy.master_seed,
        normalization,
        workers,
    )
    return res[cfg.sequence.kind]


def _apply_axes(spec: SweepSpec, values: tuple):
    params = spec.params
    tau = spec.tau
    bmodel = spec.beta_model
    dmodel = spec.dgamma_model
    for axis, v in zip(spec.axes, values):
        if axis.name == "tau":
            tau = float(v)
        elif axis.name == "J":
            params = PTParams(float(v), params.Gamma)
        elif axis.name == "beta":
            bmodel = ConstantValue(float(v))
        elif axis.name == "sigma":
            period = bmodel.period if isinstance(bmodel, GaussianPiecewise) else None
            bmodel = GaussianPiecewise(float(v), period)
        elif axis.name == "w":
            period = dmodel.period if isinstance(dmodel, UniformPiecewise) else None
            dmodel = UniformPiecewise(float(v), period)
    return params, tau, bmodel, dmodel


def _star_point(args):
    i, spec, values, normalization = args
    params, tau, bmodel, dmodel = _apply_axes(spec, values)
    res = _run_point(
        i,
        params,
        tau,
        spec.m,
        spec.kinds,
        bmodel,
        dmodel,
        spec.psi0,
        spec.n_trials,
        spec.seed,
        normalization,
        workers=1,
    )
    return SweepPoint(values, res)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list:
    """Grid sweep; one SweepPoint per grid point, in row-major axis order.

    Points are distributed over workers; a single-point sweep falls back
    to chunk-level parallelism inside the point.  Either way the output
    is independent of the worker count, byte for byte.
    """
    grids = [a.values for a in spec.axes] or [((),)]
    if spec.axes:
        points = list(itertools.product(*grids))
    else:
        points = [()]
    args = [(i, spec, values, spec.normalization) for i, values in enumerate(points)]
    if len(points) == 1:
        i, _, values, _ = args[0]
        params, tau, bmodel, dmodel = _apply_axes(spec, values)
        res = _run_point(
            i,
            params,
            tau,
            spec.m,
            spec.kinds,
            bmodel,
            dmodel,
            spec.psi0,
            spec.n_trials,
            spec.seed,
            spec.normalization,
            workers=workers,
        )
        return [SweepPoint(values, res)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_star_point, args, chunksize=1))
    return [_star_point(a) for a in args]
