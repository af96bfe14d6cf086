"""Command-line front end.

Subcommands: simulate (single point), sweep (1- or 2-axis grid), magnus
(average-Hamiltonian verification), presets (list built-ins), selftest
(quick acceptance checks).  Exit codes: 0 success, 2 config error,
3 domain error, 4 selftest or verification failure.

Configuration is a flat key = value text file; '#' starts a comment.
Frequencies are angular (rad/s): a quoted "10 kHz" is 10000, a quoted
"2000 pi Hz" is 6283.19.  A --preset can be combined with --config and
flags; later sources override earlier ones, and a sweep axis can be
removed by setting its key to "none".
"""

from __future__ import annotations

import argparse
import datetime
import math
import os
import sys

import numpy as np

from . import __version__
from .engine import (
    NORMALIZATION_MODES,
    SweepAxis,
    SweepSpec,
    run_sweep,
)
from .errors import ConfigError, DomainError
from .linalg import ID2, SIGMA_Y, expm_closed, dm_normalize, dm_from_state
from .model import PTParams, h_pt_passive, h_total, NoiseFields, ideal_period, not_gate_time
from .noise import ConstantValue, GaussianPiecewise, UniformPiecewise, Zero, sample_trajectory
from .presets import PRESETS, get_preset
from .sequence import (
    SequenceKind,
    SequenceSpec,
    compile_schedule,
    magnus1,
    magnus2,
    toggle_frame,
)

_FLOAT_KEYS = {
    "J",
    "Gamma",
    "tau",
    "beta_value",
    "beta_sigma",
    "beta_w",
    "dgamma_value",
    "dgamma_sigma",
    "dgamma_w",
}
_INT_KEYS = {"m", "trials", "seed", "workers"}
_STR_KEYS = {"psi0", "kinds", "beta_model", "dgamma_model", "noise_period", "normalization", "out"}
_SWEEP_KEYS = {"sweep_tau", "sweep_J", "sweep_beta", "sweep_sigma", "sweep_w"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _SWEEP_KEYS

_MODEL_TOKENS = ("zero", "constant", "gaussian", "uniform")
_KIND_TOKENS = {
    "unprotected": SequenceKind.UNPROTECTED,
    "s1": SequenceKind.CPMG_LIKE,
    "s2": SequenceKind.CPMG,
}
# fixed axis priority; also the CSV column order for 2-axis sweeps
_AXIS_ORDER = ("tau", "J", "beta", "sigma", "w")


def parse_config_text(text: str, origin: str = "<config>") -> dict:
    """Flat key = value parsing; unknown keys rejected with line numbers."""
    out = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}, line {n}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{origin}, line {n}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"{origin}, line {n}: empty value for {key!r}")
        out[key] = (value, f"{origin}, line {n}")
    return out


def _merge(base: dict, extra: dict) -> dict:
    merged = dict(base)
    merged.update(extra)
    return merged


class _Resolver:
    """Typed view over the merged key -> (value, where) map."""

    def __init__(self, cfg: dict):
        self.cfg = cfg

    def _raw(self, key):
        return self.cfg.get(key, (None, None))

    def get_float(self, key, default=None, required=False):
        value, where = self._raw(key)
        if value is None:
            if required:
                raise ConfigError(f"missing required key {key!r}")
            return default
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: {key} must be a number, got {value!r}") from None

    def get_int(self, key, default=None, required=False):
        value, where = self._raw(key)
        if value is None:
            if required:
                raise ConfigError(f"missing required key {key!r}")
            return default
        try:
            return int(str(value), 0)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: {key} must be an integer, got {value!r}") from None

    def get_str(self, key, default=None):
        value, where = self._raw(key)
        if value is None:
            return default
        return str(value)

    def where(self, key):
        return self._raw(key)[1] or "<config>"


def _parse_psi0(token: str):
    named = {
        "0": (1.0 + 0.0j, 0.0 + 0.0j),
        "1": (0.0 + 0.0j, 1.0 + 0.0j),
        "plus": (1.0 / math.sqrt(2.0) + 0.0j, 1.0 / math.sqrt(2.0) + 0.0j),
    }
    if token in named:
        return named[token]
    parts = token.split(",")
    if len(parts) == 2:
        try:
            c0, c1 = complex(parts[0]), complex(parts[1])
        except ValueError:
            raise ConfigError(f"psi0: cannot parse amplitudes {token!r}") from None
        if abs(c0) ** 2 + abs(c1) ** 2 <= 0.0:
            raise ConfigError("psi0 must have nonzero norm")
        return (c0, c1)
    raise ConfigError(f"psi0 must be one of 0, 1, plus or 'c0,c1', got {token!r}")


def _parse_kinds(token: str):
    kinds = []
    for part in token.split(","):
        part = part.strip()
        if part not in _KIND_TOKENS:
            raise ConfigError(f"kinds: unknown sequence kind {part!r}; choose from {sorted(_KIND_TOKENS)}")
        kind = _KIND_TOKENS[part]
        if kind not in kinds:
            kinds.append(kind)
    if not kinds:
        raise ConfigError("kinds: at least one sequence kind required")
    return tuple(kinds)


def _parse_noise_model(r: _Resolver, prefix: str, period):
    token = r.get_str(f"{prefix}_model", "zero")
    if token not in _MODEL_TOKENS:
        raise ConfigError(
            f"{r.where(f'{prefix}_model')}: {prefix}_model must be one of {_MODEL_TOKENS}, got {token!r}"
        )
    if token == "zero":
        return Zero()
    if token == "constant":
        return ConstantValue(r.get_float(f"{prefix}_value", 0.0))
    if token == "gaussian":
        sigma = r.get_float(f"{prefix}_sigma", required=True)
        return GaussianPiecewise(sigma, period)
    w = r.get_float(f"{prefix}_w", required=True)
    return UniformPiecewise(w, period)


def _parse_axis(r: _Resolver, key: str):
    value, where = r._raw(key)
    if value is None or value.lower() in ("none", "off"):
        return None
    parts = value.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{where}: {key} must be start:stop:npoints, got {value!r}")
    try:
        start, stop, npoints = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"{where}: {key} must be start:stop:npoints, got {value!r}") from None
    if npoints < 1:
        raise ConfigError(f"{where}: {key} defines an empty axis (npoints = {npoints})")
    name = key[len("sweep_"):]
    return SweepAxis(name, tuple(float(x) for x in np.linspace(start, stop, npoints)))


def resolve_experiment(cfg: dict) -> tuple:
    """Build a SweepSpec plus output settings from a merged config map."""
    r = _Resolver(cfg)
    params = PTParams(r.get_float("J", required=True), r.get_float("Gamma", required=True))
    m = r.get_int("m", required=True)
    tau = r.get_float("tau")
    psi0 = _parse_psi0(r.get_str("psi0", "1"))
    kinds = _parse_kinds(r.get_str("kinds", "unprotected,s1"))
    period_token = r.get_str("noise_period", "auto")
    if period_token == "auto":
        period = None
    else:
        try:
            period = float(period_token)
        except ValueError:
            raise ConfigError(
                f"{r.where('noise_period')}: noise_period must be 'auto' or seconds, got {period_token!r}"
            ) from None
        if not period > 0.0:
            raise ConfigError(f"{r.where('noise_period')}: noise_period must be positive")
    beta_model = _parse_noise_model(r, "beta", period)
    dgamma_model = _parse_noise_model(r, "dgamma", period)
    axes = []
    for name in _AXIS_ORDER:
        axis = _parse_axis(r, f"sweep_{name}")
        if axis is not None:
            axes.append(axis)
    if len(axes) > 2:
        raise ConfigError("at most two sweep axes are supported")
    trials = r.get_int("trials", 10000)
    if trials < 1:
        raise ConfigError(f"{r.where('trials')}: trials must be >= 1")
    seed = r.get_int("seed", 0)
    workers = r.get_int("workers", 1)
    if workers < 1:
        raise ConfigError(f"{r.where('workers')}: workers must be >= 1")
    normalization = r.get_str("normalization", "per-trial")
    if normalization not in NORMALIZATION_MODES:
        raise ConfigError(
            f"{r.where('normalization')}: normalization must be one of {NORMALIZATION_MODES}"
        )
    out_path = r.get_str("out")
    spec = SweepSpec(
        params=params,
        m=m,
        tau=tau,
        kinds=kinds,
        beta_model=beta_model,
        dgamma_model=dgamma_model,
        psi0=psi0,
        axes=tuple(axes),
        n_trials=trials,
        seed=seed,
        normalization=normalization,
    )
    return spec, workers, out_path


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _header_lines(spec: SweepSpec, workers: int, preset: str, failures_total: int) -> list:
    def model_echo(prefix, model):
        if isinstance(model, Zero):
            return [f"{prefix}_model=zero"]
        if isinstance(model, ConstantValue):
            return [f"{prefix}_model=constant", f"{prefix}_value={_fmt(model.value)}"]
        if isinstance(model, GaussianPiecewise):
            per = "auto" if model.period is None else _fmt(model.period)
            return [f"{prefix}_model=gaussian", f"{prefix}_sigma={_fmt(model.sigma)}", f"{prefix}_period={per}"]
        per = "auto" if model.period is None else _fmt(model.period)
        return [f"{prefix}_model=uniform", f"{prefix}_w={_fmt(model.w)}", f"{prefix}_period={per}"]

    cfg_items = [
        f"J={_fmt(spec.params.J)}",
        f"Gamma={_fmt(spec.params.Gamma)}",
        f"m={spec.m}",
        f"tau={'swept' if spec.tau is None else _fmt(spec.tau)}",
        f"psi0={_fmt(spec.psi0[0].real)}{spec.psi0[0].imag:+.17g}j,{_fmt(spec.psi0[1].real)}{spec.psi0[1].imag:+.17g}j",
        f"kinds={','.join(k.value for k in spec.kinds)}",
    ]
    cfg_items += model_echo("beta", spec.beta_model)
    cfg_items += model_echo("dgamma", spec.dgamma_model)
    for axis in spec.axes:
        cfg_items.append(
            f"sweep_{axis.name}={_fmt(axis.values[0])}:{_fmt(axis.values[-1])}:{len(axis.values)}"
        )
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return [
        f"# ptdd {__version__}",
        f"# created {stamp}",
        "# units: angular frequencies in rad/s; quoted 'kHz' means 1e3 rad/s, 'Hz' means rad/s",
        f"# seed={spec.seed}",
        f"# trials={spec.n_trials}",
        f"# workers={workers}",
        f"# normalization={spec.normalization}",
        f"# preset={preset or '-'}",
        f"# failures_total={failures_total}",
        "# config " + " ".join(cfg_items),
    ]


def _result_table(spec: SweepSpec, points: list):
    axis_names = [a.name for a in spec.axes]
    columns = list(axis_names)
    for kind in spec.kinds:
        columns += [f"F_{kind.value}", f"spread_{kind.value}", f"fail_{kind.value}"]
    rows = []
    failures_total = 0
    for point in points:
        cells = [_fmt(v) for v in point.values]
        for kind in spec.kinds:
            res = point.results[kind]
            cells += [_fmt(res.fidelity), _fmt(res.fidelity_spread), str(res.n_failed)]
            failures_total += res.n_failed
        rows.append(",".join(cells))
    return columns, rows, failures_total


def _emit(header: list, columns: list, rows: list, out_path):
    text_lines = header + ["# columns: " + ",".join(columns)] + rows
    for line in text_lines:
        print(line)
    if out_path:
        tmp = out_path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write("\n".join(text_lines) + "\n")
        os.replace(tmp, out_path)


def cmd_simulate(spec: SweepSpec, workers: int, out_path, preset: str) -> int:
    if spec.axes:
        raise ConfigError(
            "simulate runs a single point; remove sweep axes (set sweep_* = none) or use the sweep command"
        )
    if spec.tau is None:
        raise ConfigError("missing required key 'tau'")
    points = run_sweep(spec, workers=workers)
    columns, rows, failures_total = _result_table(spec, points)
    header = _header_lines(spec, workers, preset, failures_total)
    _emit(header, columns, rows, out_path)
    res = points[0].results
    for kind in spec.kinds:
        rho = res[kind].rho_avg
        ent = " ".join(f"{z.real:+.10g}{z.imag:+.10g}j" for z in np.asarray(rho).ravel())
        print(f"# rho_avg[{kind.value}] = [{ent}]")
    return 0


def cmd_sweep(spec: SweepSpec, workers: int, out_path, preset: str) -> int:
    if not spec.axes:
        raise ConfigError("sweep requires at least one sweep_* axis; use simulate for single points")
    points = run_sweep(spec, workers=workers)
    columns, rows, failures_total = _result_table(spec, points)
    header = _header_lines(spec, workers, preset, failures_total)
    _emit(header, columns, rows, out_path)
    return 0


def _constant_fields(spec: SweepSpec):
    def const_of(model, what):
        if isinstance(model, Zero):
            return 0.0
        if isinstance(model, ConstantValue):
            return model.value
        raise ConfigError(f"magnus requires constant or zero {what} noise")

    return const_of(spec.beta_model, "beta"), const_of(spec.dgamma_model, "dgamma")


def cmd_magnus(spec: SweepSpec, out_path, preset: str) -> int:
    """Print first and second average-Hamiltonian orders for s1 and s2.

    Compares magnus1 against (1/2) H_pt_passive - i dG I and magnus2
    against the closed commutator form (s1) and zero (s2); any mismatch
    beyond 1e-12 of scale fails the command.
    """
    if spec.tau is None:
        raise ConfigError("missing required key 'tau'")
    beta, dg = _constant_fields(spec)
    p = spec.params
    tau = spec.tau
    rng = np.random.default_rng(0)  # constant models draw nothing
    ok_all = True

    def show(tag, mat):
        ent = " ".join(f"{z.real:+.10g}{z.imag:+.10g}j" for z in np.asarray(mat).ravel())
        print(f"{tag} = [{ent}]")

    h_ideal = h_pt_passive(p)
    h_full = h_total(p, NoiseFields(beta=beta, delta_gamma=dg))
    scale1 = np.linalg.norm(h_ideal)
    for kind in (SequenceKind.CPMG_LIKE, SequenceKind.CPMG):
        seq = SequenceSpec(kind, tau, 1)
        wall = seq.wall_time
        tb = sample_trajectory(ConstantValue(beta), wall, rng)
        td = sample_trajectory(ConstantValue(dg), wall, rng)
        sched = compile_schedule(seq, p, tb, td)
        toggled, residual = toggle_frame(sched)
        m1 = magnus1(toggled)
        m2 = magnus2(toggled)
        expected1 = 0.5 * h_ideal - 1j * dg * ID2
        if kind is SequenceKind.CPMG_LIKE:
            expected2 = 0.5 * p.J * tau * (beta + 1j * dg) * SIGMA_Y
        else:
            expected2 = np.zeros((2, 2), dtype=complex)
        err1 = float(np.linalg.norm(m1 - expected1))
        err2 = float(np.linalg.norm(m2 - expected2))
        scale2 = max(np.linalg.norm(h_full) ** 2 * 2.0 * tau, 1e-30)
        ok1 = err1 <= 1e-12 * max(scale1, 1e-30)
        ok2 = err2 <= 1e-12 * scale2
        ok_all = ok_all and ok1 and ok2
        print(f"== {kind.value} cycle (tau={_fmt(tau)}, beta={_fmt(beta)}, dgamma={_fmt(dg)})")
        show("H1_avg", m1)
        show("H2_avg", m2)
        show("residual", residual)
        print(f"H1_avg vs (1/2)H_ideal - i*dG*I: residual {err1:.3e} -> {'PASS' if ok1 else 'FAIL'}")
        ref = "closed commutator form" if kind is SequenceKind.CPMG_LIKE else "zero (symmetric cycle)"
        print(f"H2_avg vs {ref}: residual {err2:.3e} -> {'PASS' if ok2 else 'FAIL'}")
    return 0 if ok_all else 4


def cmd_presets() -> int:
    for name in PRESETS:
        entry = PRESETS[name]
        cfg = entry["config"]
        kinds = cfg.get("kinds", "")
        print(f"{name}: {entry['note']}")
        fixed = ", ".join(
            f"{k}={cfg[k]}" for k in ("J", "Gamma", "m", "tau", "psi0", "trials") if k in cfg
        )
        sweeps = ", ".join(f"{k}={cfg[k]}" for k in sorted(cfg) if k.startswith("sweep_"))
        print(f"    {fixed}")
        print(f"    kinds={kinds}; {sweeps}")
    return 0


def cmd_selftest() -> int:
    """Fast re-derivations of the pinned constants and identities."""
    from . import kernel

    checks = []

    t1 = not_gate_time(PTParams(1e4, 1e3)) / 2.0
    checks.append(("tau fig1 = T_not/2 near 73.9 us", abs(t1 - 73.9e-6) <= 0.05e-6, f"{t1 * 1e6:.5f} us"))
    checks.append(
        ("fig1a preset tau re-derived", PRESETS["fig1a"]["config"]["tau"] == t1, "exact match")
    )
    t2 = not_gate_time(PTParams(1e3, 500.0)) / 8.0
    checks.append(("tau fig2 = T_not/8 near 151.2 us", abs(t2 - 151.2e-6) <= 0.1e-6, f"{t2 * 1e6:.5f} us"))
    checks.append(
        ("fig2a preset tau re-derived", PRESETS["fig2a"]["config"]["tau"] == t2, "exact match")
    )
    tp = ideal_period(PTParams(1e4, 1e3))
    checks.append(("ideal period near 315.8 us", abs(tp - 315.8e-6) <= 0.1e-6, f"{tp * 1e6:.5f} us"))

    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        t = float(rng.uniform(0.0, 2.0))
        from .linalg import expm_series

        worst = max(worst, float(np.abs(expm_closed(a, t) - expm_series(a, t)).max()))
    checks.append(("closed vs series exponential (200 random)", worst < 1e-10, f"max err {worst:.2e}"))

    worst_k = 0.0
    for _ in range(100):
        a = np.ascontiguousarray(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        t = float(rng.uniform(0.0, 2.0))
        worst_k = max(worst_k, float(np.abs(expm_closed(a, t) - kernel.expm2(a, t)).max()))
    checks.append(
        (f"kernel ({kernel.BACKEND}) vs closed exponential", worst_k < 1e-10, f"max err {worst_k:.2e}")
    )

    p = PTParams(1e4, 1e3)
    beta, dg, tau = 777.0, 333.0, 10e-6
    rng0 = np.random.default_rng(0)
    ok_m = True
    for kind in (SequenceKind.CPMG_LIKE, SequenceKind.CPMG):
        seq = SequenceSpec(kind, tau, 1)
        tb = sample_trajectory(ConstantValue(beta), seq.wall_time, rng0)
        td = sample_trajectory(ConstantValue(dg), seq.wall_time, rng0)
        toggled, _ = toggle_frame(compile_schedule(seq, p, tb, td))
        m1 = magnus1(toggled)
        ok_m = ok_m and float(np.linalg.norm(m1 - (0.5 * h_pt_passive(p) - 1j * dg * ID2))) < 1e-12 * np.linalg.norm(
            h_pt_passive(p)
        )
        if kind is SequenceKind.CPMG:
            h_full = h_total(p, NoiseFields(beta=beta, delta_gamma=dg))
            ok_m = ok_m and float(np.linalg.norm(magnus2(toggled))) < 1e-12 * np.linalg.norm(h_full) ** 2 * 2 * tau
    checks.append(("average-Hamiltonian closed forms", ok_m, "s1/s2 first order, s2 second order"))

    psi0 = np.array([1.0, 0.0], dtype=complex)
    dev = 0.0
    for tt in np.linspace(0.0, 4e-4, 5):
        ra = expm_closed(h_pt_passive(p), tt)
        rb = expm_closed(h_pt_passive(p), tt + tp)
        da = dm_normalize(dm_from_state(ra @ psi0))
        db = dm_normalize(dm_from_state(rb @ psi0))
        dev = max(dev, float(np.abs(da - db).max()))
    checks.append(("ideal evolution periodic in T_p", dev < 1e-9, f"max dev {dev:.2e}"))

    failed = 0
    for name, ok, detail in checks:
        print(f"selftest: {name}: {detail} -> {'PASS' if ok else 'FAIL'}")
        if not ok:
            failed += 1
    if failed:
        print(f"selftest: {failed} of {len(checks)} checks failed")
        return 4
    print(f"selftest: all {len(checks)} checks passed (kernel backend: {kernel.BACKEND})")
    return 0


def _load_merged_config(args) -> tuple:
    merged = {}
    preset_name = getattr(args, "preset", None)
    if preset_name:
        if preset_name not in PRESETS:
            raise ConfigError(
                f"unknown preset {preset_name!r}; available: {', '.join(PRESETS)}"
            )
        cfg = get_preset(preset_name)["config"]
        merged = {k: (str(v), f"preset {preset_name}") for k, v in cfg.items()}
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
        merged = _merge(merged, parse_config_text(text, origin=path))
    if not merged:
        raise ConfigError("no configuration given; use --preset and/or --config")
    for flag in ("seed", "trials", "workers"):
        value = getattr(args, flag, None)
        if value is not None:
            merged[flag] = (str(value), f"--{flag}")
    if getattr(args, "normalization", None):
        merged["normalization"] = (args.normalization, "--normalization")
    if getattr(args, "out", None):
        merged["out"] = (args.out, "--out")
    if getattr(args, "dense", False):
        merged["trials"] = ("10000", "--dense")
        for key in list(merged):
            if key.startswith("sweep_") and len(_SWEEP_KEYS) > 0:
                value, where = merged[key]
                parts = value.split(":")
                if len(parts) == 3 and parts[2].isdigit() and int(parts[2]) >= 21:
                    merged[key] = (f"{parts[0]}:{parts[1]}:81", "--dense")
    return merged, preset_name or ""


def _add_experiment_flags(sub):
    sub.add_argument("--config", help="flat key = value experiment file")
    sub.add_argument("--preset", help="built-in preset name (see the presets command)")
    sub.add_argument("--seed", type=int, help="master seed (echoed in output)")
    sub.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    sub.add_argument("--workers", type=int, help="worker processes")
    sub.add_argument("--out", help="CSV output path (written atomically)")
    sub.add_argument(
        "--normalization",
        choices=list(NORMALIZATION_MODES),
        help="density-matrix averaging mode",
    )
    sub.add_argument(
        "--dense",
        action="store_true",
        help="full-scale resolution: 10000 trials, 81-point grid axes",
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptdd",
        description="dynamical-decoupling protection of PT-symmetric qubit evolutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("simulate", "run one parameter point"),
        ("sweep", "run a 1- or 2-axis parameter sweep"),
        ("magnus", "verify average-Hamiltonian orders for s1/s2"),
    ):
        s = sub.add_parser(name, help=helptext)
        _add_experiment_flags(s)
    sub.add_parser("presets", help="list built-in presets")
    sub.add_parser("selftest", help="fast acceptance self-checks")
    args = parser.parse_args(argv)

    try:
        if args.command == "presets":
            return cmd_presets()
        if args.command == "selftest":
            return cmd_selftest()
        merged, preset_name = _load_merged_config(args)
        spec, workers, out_path = resolve_experiment(merged)
        if args.command == "simulate":
            return cmd_simulate(spec, workers, out_path, preset_name)
        if args.command == "sweep":
            return cmd_sweep(spec, workers, out_path, preset_name)
        return cmd_magnus(spec, out_path, preset_name)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
