"""Compiled vs pure-Python kernel on the Monte Carlo hot path.

Two measurements:
  1. kernel-only: propagate_flat over precompiled trial arrays for a
     representative ensemble point (m=8 protected cycle, Gaussian
     detuning noise), identical inputs for both backends;
  2. end-to-end: run_ensemble for the same point in a subprocess per
     backend, so compile/sampling overhead is included.

Run:  python3 benchmarks/bench_kernel.py [n_trials]
"""

import math
import os
import subprocess
import sys
import time

import numpy as np

from ptdd import _kernel_py
from ptdd.engine import _compile_arrays, _resolve_period
from ptdd.model import PTParams, not_gate_time
from ptdd.noise import FIELD_BETA, FIELD_DELTA_GAMMA, GaussianPiecewise, SeedPolicy, Zero, sample_trajectory
from ptdd.sequence import SequenceKind

try:
    from ptdd import _kernel
except ImportError:
    _kernel = None

N_TRIALS = int(sys.argv[1]) if len(sys.argv) > 1 else 2000

P = PTParams(1e3, 500.0)
TAU = not_gate_time(P) / 8.0
M = 8
WALL = 2.0 * M * TAU


def build_workload():
    policy = SeedPolicy(42)
    bmodel = _resolve_period(GaussianPiecewise(1.2e3), TAU)
    work = []
    for trial in range(N_TRIALS):
        tb = sample_trajectory(bmodel, WALL, policy.stream(0, trial, FIELD_BETA))
        td = sample_trajectory(Zero(), WALL, policy.stream(0, trial, FIELD_DELTA_GAMMA))
        work.append(_compile_arrays(SequenceKind.CPMG_LIKE, TAU, M, P, tb, td))
    return work


def time_backend(impl, work):
    c0 = 1.0 / math.sqrt(2.0) + 0.0j
    acc = 0.0 + 0.0j
    t0 = time.perf_counter()
    for codes, gens, durs in work:
        a, b = impl.propagate_flat(codes, gens, durs, c0, c0)
        acc += a + b
    dt = time.perf_counter() - t0
    return dt, acc


def end_to_end(force_py):
    code = (
        "import math;"
        "from ptdd import PTParams, SequenceKind, SequenceSpec, TrialConfig, "
        "GaussianPiecewise, Zero, SeedPolicy, run_ensemble, not_gate_time;"
        "p = PTParams(1e3, 500.0); tau = not_gate_time(p)/8;"
        "cfg = TrialConfig(params=p, sequence=SequenceSpec(SequenceKind.CPMG_LIKE, tau, 8),"
        "beta_model=GaussianPiecewise(1.2e3), dgamma_model=Zero(), psi0=(0j, 1+0j));"
        f"r = run_ensemble(cfg, {N_TRIALS}, SeedPolicy(42));"
        "print(f'{r.fidelity:.15f}')"
    )
    env = dict(os.environ)
    env["PTDD_FORCE_PY_KERNEL"] = "1" if force_py else "0"
    t0 = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    return time.perf_counter() - t0, out.stdout.strip()


def main():
    print(f"workload: {N_TRIALS} trials of the m=8 protected cycle, "
          f"tau={TAU * 1e6:.2f} us, Gaussian sigma=1.2e3 detuning noise")
    work = build_workload()
    n_ops = sum(len(c) for c, _, _ in work)
    print(f"compiled to {n_ops} kernel ops ({n_ops / len(work):.1f} per trial)\n")

    dt_py, acc_py = time_backend(_kernel_py, work)
    print(f"python  kernel: {dt_py:8.3f} s   {dt_py / N_TRIALS * 1e6:8.1f} us/trial")
    if _kernel is None:
        print("cython  kernel: not built (pip install -e . compiles it)")
    else:
        dt_cy, acc_cy = time_backend(_kernel, work)
        print(f"cython  kernel: {dt_cy:8.3f} s   {dt_cy / N_TRIALS * 1e6:8.1f} us/trial")
        print(f"speedup: {dt_py / dt_cy:.1f}x   (result agreement: {abs(acc_py - acc_cy):.2e})")

    print("\nend-to-end run_ensemble (subprocess, includes sampling + compile):")
    wt_py, fid_py = end_to_end(True)
    print(f"python  backend: {wt_py:6.2f} s   F = {fid_py}")
    if _kernel is not None:
        wt_cy, fid_cy = end_to_end(False)
        print(f"cython  backend: {wt_cy:6.2f} s   F = {fid_cy}")
        same = "identical" if fid_py == fid_cy else "DIFFERENT"
        print(f"speedup: {wt_py / wt_cy:.1f}x   fidelities {same}")


if __name__ == "__main__":
    main()
