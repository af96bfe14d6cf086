import math

import numpy as np
import pytest

from ptdd.engine import (
    CHUNK,
    EnsembleResult,
    SweepAxis,
    SweepSpec,
    TrialConfig,
    _compile_arrays,
    _flatten,
    fidelity,
    ideal_density,
    propagate,
    run_ensemble,
    run_sweep,
)
from ptdd.errors import DegenerateStateError, DomainError
from ptdd.linalg import ID2, dm_from_state, dm_normalize, expm_closed
from ptdd.model import NoiseFields, PTParams, h_noise, h_total, not_gate_time
from ptdd.noise import (
    ConstantValue,
    GaussianPiecewise,
    SeedPolicy,
    UniformPiecewise,
    Zero,
    sample_trajectory,
)
from ptdd.sequence import SequenceKind, SequenceSpec, compile_schedule

# frozen from the independent scipy-based propagator chain at the
# m=2, tau=T_not/2, beta=2000*pi, J=1e4, Gamma=1e3, psi0=|1> point
FROZEN_POINT = {
    SequenceKind.UNPROTECTED: 0.733914439829361,
    SequenceKind.CPMG_LIKE: 0.983596183367902,
    SequenceKind.CPMG: 0.993937367868618,
}

P_PARAMS = PTParams(1e4, 1e3)
PSI_1 = (0.0 + 0.0j, 1.0 + 0.0j)


def point_config(kind, beta_model=None, dgamma_model=None, m=2, tau=None):
    tau = not_gate_time(P_PARAMS) / 2.0 if tau is None else tau
    return TrialConfig(
        params=P_PARAMS,
        sequence=SequenceSpec(kind, tau, m),
        beta_model=beta_model or Zero(),
        dgamma_model=dgamma_model or Zero(),
        psi0=PSI_1,
    )


def test_fidelity_basic_identities():
    rho = dm_normalize(dm_from_state((0.6, 0.8)))
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-14)
    mixed = ID2 / 2.0
    pure0 = np.diag([1.0, 0.0]).astype(complex)
    assert fidelity(pure0, mixed) == pytest.approx(0.70710678118654746, rel=1e-12)
    assert fidelity(pure0, mixed) == fidelity(mixed, pure0)


def test_ideal_density_not_gate():
    rho = ideal_density(P_PARAMS, not_gate_time(P_PARAMS), PSI_1)
    assert abs(rho[0, 0] - 1.0) < 1e-12
    assert abs(rho[1, 1]) < 1e-12


def test_ideal_density_rejects_negative_time():
    with pytest.raises(DomainError):
        ideal_density(P_PARAMS, -1e-6, PSI_1)


def test_propagate_matches_manual_chain():
    tau = 4e-5
    seq = SequenceSpec(SequenceKind.CPMG_LIKE, tau, 1)
    rng = np.random.default_rng(2)
    tb = sample_trajectory(ConstantValue(450.0), seq.wall_time, rng)
    td = sample_trajectory(ConstantValue(70.0), seq.wall_time, rng)
    sched = compile_schedule(seq, P_PARAMS, tb, td)
    got = propagate(sched, PSI_1)
    fields = NoiseFields(beta=450.0, delta_gamma=70.0)
    p_op = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    u = (
        expm_closed(h_total(P_PARAMS, fields), tau)
        @ p_op
        @ expm_closed(h_noise(fields), tau)
        @ p_op
    )
    ref = u @ np.asarray(PSI_1, dtype=complex)
    assert np.abs(got - ref).max() < 1e-12 * np.abs(ref).max()


def test_propagate_raises_on_total_loss():
    tau = 1e-3
    seq = SequenceSpec(SequenceKind.UNPROTECTED, tau, 1)
    rng = np.random.default_rng(3)
    tb = sample_trajectory(Zero(), tau, rng)
    td = sample_trajectory(ConstantValue(1e9), tau, rng)
    sched = compile_schedule(seq, PTParams(0.0, 0.0), tb, td)
    with pytest.raises(DegenerateStateError):
        propagate(sched, PSI_1)


def test_compile_arrays_matches_object_path():
    # the lean compiler must emit byte-identical arrays to the
    # flattened object schedule, for every kind
    tau, m = 6e-5, 3
    rng = np.random.default_rng(41)
    wall = 2 * m * tau
    tb = sample_trajectory(GaussianPiecewise(800.0, period=2 * tau), wall, rng)
    td = sample_trajectory(UniformPiecewise(120.0, period=2 * tau), wall, rng)
    for kind in SequenceKind:
        seq = SequenceSpec(kind, tau, m)
        sched = compile_schedule(seq, P_PARAMS, tb, td)
        ref_codes, ref_gens, ref_durs = _flatten(sched)
        codes, gens, durs = _compile_arrays(kind, tau, m, P_PARAMS, tb, td)
        assert np.array_equal(codes, ref_codes)
        assert np.array_equal(durs, ref_durs)
        assert np.array_equal(gens, ref_gens)


def test_run_ensemble_frozen_point():
    policy = SeedPolicy(42)
    beta = ConstantValue(2000.0 * math.pi)
    for kind, frozen in FROZEN_POINT.items():
        cfg = point_config(kind, beta_model=beta)
        res = run_ensemble(cfg, 1, policy)
        assert res.fidelity == pytest.approx(frozen, rel=1e-12)
        assert res.n_failed == 0
        assert res.n_trials == 1
        assert res.fidelity_spread == 0.0


def test_noiseless_point_is_exact():
    res = run_ensemble(point_config(SequenceKind.CPMG_LIKE), 1, SeedPolicy(0))
    assert res.fidelity == pytest.approx(1.0, abs=1e-9)


def test_trajectories_are_paired_across_kinds():
    # the unprotected result must not depend on which other kinds run
    # alongside it in the same sweep point
    tau = not_gate_time(PTParams(1e3, 500.0)) / 8.0
    spec_kw = dict(
        params=PTParams(1e3, 500.0),
        m=8,
        tau=tau,
        beta_model=GaussianPiecewise(1.2e3),
        dgamma_model=Zero(),
        psi0=PSI_1,
        axes=(),
        n_trials=64,
        seed=5,
    )
    alone = run_sweep(SweepSpec(kinds=(SequenceKind.UNPROTECTED,), **spec_kw))
    paired = run_sweep(
        SweepSpec(kinds=(SequenceKind.UNPROTECTED, SequenceKind.CPMG_LIKE), **spec_kw)
    )
    f_alone = alone[0].results[SequenceKind.UNPROTECTED].fidelity
    f_paired = paired[0].results[SequenceKind.UNPROTECTED].fidelity
    assert f_alone == f_paired


def test_worker_count_does_not_change_results():
    tau = not_gate_time(PTParams(1e3, 500.0)) / 8.0
    n = CHUNK + 200  # force several chunks
    cfg = TrialConfig(
        params=PTParams(1e3, 500.0),
        sequence=SequenceSpec(SequenceKind.CPMG_LIKE, tau, 8),
        beta_model=GaussianPiecewise(1.2e3),
        dgamma_model=Zero(),
        psi0=PSI_1,
    )
    r1 = run_ensemble(cfg, n, SeedPolicy(42), workers=1)
    r3 = run_ensemble(cfg, n, SeedPolicy(42), workers=3)
    assert r1.fidelity == r3.fidelity
    assert r1.fidelity_spread == r3.fidelity_spread
    assert np.array_equal(r1.rho_avg, r3.rho_avg)


def test_multi_point_sweep_worker_invariance():
    spec = SweepSpec(
        params=P_PARAMS,
        m=2,
        tau=not_gate_time(P_PARAMS) / 2.0,
        kinds=(SequenceKind.UNPROTECTED, SequenceKind.CPMG_LIKE),
        beta_model=Zero(),
        dgamma_model=Zero(),
        psi0=PSI_1,
        axes=(SweepAxis("beta", tuple(np.linspace(0.0, 4000.0 * math.pi, 5))),),
        n_trials=1,
        seed=11,
    )
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=4)
    for a, b in zip(serial, parallel):
        assert a.values == b.values
        for kind in spec.kinds:
            assert a.results[kind].fidelity == b.results[kind].fidelity


def test_sweep_grid_is_row_major():
    spec = SweepSpec(
        params=P_PARAMS,
        m=1,
        tau=None,
        kinds=(SequenceKind.UNPROTECTED,),
        beta_model=Zero(),
        dgamma_model=Zero(),
        psi0=PSI_1,
        axes=(
            SweepAxis("tau", (1e-5, 2e-5)),
            SweepAxis("J", (5e3, 6e3)),
        ),
        n_trials=1,
        seed=0,
    )
    points = run_sweep(spec)
    assert [p.values for p in points] == [
        (1e-5, 5e3),
        (1e-5, 6e3),
        (2e-5, 5e3),
        (2e-5, 6e3),
    ]


def test_zero_tau_point_returns_initial_state():
    spec = SweepSpec(
        params=P_PARAMS,
        m=4,
        tau=None,
        kinds=(SequenceKind.CPMG, SequenceKind.UNPROTECTED),
        beta_model=ConstantValue(1e3),
        dgamma_model=ConstantValue(500.0),
        psi0=PSI_1,
        axes=(SweepAxis("tau", (0.0,)),),
        n_trials=3,
        seed=1,
    )
    points = run_sweep(spec)
    for kind in spec.kinds:
        res = points[0].results[kind]
        assert res.fidelity == 1.0
        assert np.abs(res.rho_avg - np.diag([0.0, 1.0])).max() == 0.0


def test_batch_spread_behavior():
    tau = not_gate_time(PTParams(1e3, 500.0)) / 8.0
    cfg = TrialConfig(
        params=PTParams(1e3, 500.0),
        sequence=SequenceSpec(SequenceKind.UNPROTECTED, tau, 8),
        beta_model=GaussianPiecewise(1.5e3),
        dgamma_model=Zero(),
        psi0=PSI_1,
    )
    noisy = run_ensemble(cfg, 100, SeedPolicy(3))
    assert noisy.fidelity_spread > 0.0
    single = run_ensemble(cfg, 1, SeedPolicy(3))
    assert single.fidelity_spread == 0.0


def test_normalization_modes_differ_under_loss():
    tau = 1e-4
    cfg = TrialConfig(
        params=PTParams(1e3, 500.0),
        sequence=SequenceSpec(SequenceKind.UNPROTECTED, tau, 4),
        beta_model=Zero(),
        dgamma_model=UniformPiecewise(300.0),
        psi0=PSI_1,
    )
    per_trial = run_ensemble(cfg, 50, SeedPolicy(8), normalization="per-trial")
    post = run_ensemble(cfg, 50, SeedPolicy(8), normalization="post-average")
    assert abs(np.trace(per_trial.rho_avg) - 1.0) < 1e-12
    assert abs(np.trace(post.rho_avg) - 1.0) < 1e-12
    assert per_trial.fidelity != post.fidelity


def test_all_failed_trials_give_nan():
    cfg = TrialConfig(
        params=PTParams(0.0, 0.0),
        sequence=SequenceSpec(SequenceKind.UNPROTECTED, 1e-3, 1),
        beta_model=Zero(),
        dgamma_model=ConstantValue(1e9),
        psi0=PSI_1,
    )
    res = run_ensemble(cfg, 4, SeedPolicy(0))
    assert res.n_failed == 4
    assert math.isnan(res.fidelity)
    assert math.isnan(res.fidelity_spread)


def test_spec_validation_errors():
    base = dict(
        params=P_PARAMS,
        m=1,
        tau=1e-5,
        kinds=(SequenceKind.UNPROTECTED,),
        beta_model=Zero(),
        dgamma_model=Zero(),
        psi0=PSI_1,
        n_trials=1,
        seed=0,
    )
    with pytest.raises(DomainError):
        SweepSpec(axes=(
            SweepAxis("tau", (1e-5,)),
            SweepAxis("J", (1e3,)),
            SweepAxis("beta", (0.0,)),
        ), **base)
    with pytest.raises(DomainError):
        SweepSpec(axes=(SweepAxis("J", (1e3,)), SweepAxis("J", (2e3,))), **base)
    with pytest.raises(DomainError):
        SweepSpec(axes=(), **{**base, "tau": None})
    with pytest.raises(DomainError):
        SweepSpec(axes=(), **{**base, "normalization": "bogus"})
    with pytest.raises(DomainError):
        SweepAxis("frequency", (1.0,))
    with pytest.raises(DomainError):
        TrialConfig(
            params=P_PARAMS,
            sequence=SequenceSpec(SequenceKind.UNPROTECTED, 1e-5, 1),
            beta_model=Zero(),
            dgamma_model=Zero(),
            psi0=(0.0, 0.0),
        )


def test_ensemble_result_bookkeeping():
    res = run_ensemble(point_config(SequenceKind.UNPROTECTED), 7, SeedPolicy(1))
    assert isinstance(res, EnsembleResult)
    assert res.n_trials == 7
    assert res.n_failed == 0
