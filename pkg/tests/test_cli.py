import math
import subprocess
import sys
from argparse import Namespace

import pytest

from ptdd.cli import (
    _load_merged_config,
    main,
    parse_config_text,
    resolve_experiment,
)
from ptdd.errors import ConfigError
from ptdd.noise import ConstantValue, GaussianPiecewise, Zero
from ptdd.presets import PRESETS
from ptdd.sequence import SequenceKind

POINT_CFG = """
# single NOT-gate point
J = 1e4
Gamma = 1e3
m = 2
tau = 7.390188311873874e-05
psi0 = 1
kinds = unprotected,s1,s2
beta_model = constant
beta_value = {beta}
trials = 1
seed = 42
""".format(beta=2000 * math.pi)


def write(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_config_text_basics():
    cfg = parse_config_text("J = 1e4\n# comment\n\nGamma=500 # inline\n", "f")
    assert cfg["J"] == ("1e4", "f, line 1")
    assert cfg["Gamma"] == ("500", "f, line 4")


def test_parse_config_rejects_unknown_key():
    with pytest.raises(ConfigError, match="line 2.*bogus"):
        parse_config_text("J = 1\nbogus = 2\n", "f")


def test_parse_config_rejects_malformed_line():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config_text("just words\n", "f")
    with pytest.raises(ConfigError, match="empty value"):
        parse_config_text("J =\n", "f")


def resolve(text):
    return resolve_experiment(parse_config_text(text, "t"))


def test_resolve_defaults():
    spec, workers, out = resolve("J=1e4\nGamma=1e3\nm=2\ntau=1e-5\n")
    assert spec.n_trials == 10000
    assert spec.seed == 0
    assert workers == 1
    assert out is None
    assert spec.normalization == "per-trial"
    assert spec.kinds == (SequenceKind.UNPROTECTED, SequenceKind.CPMG_LIKE)
    assert isinstance(spec.beta_model, Zero)
    assert spec.psi0 == ((0.0 + 0.0j), (1.0 + 0.0j))


def test_resolve_models_and_axes():
    spec, _, _ = resolve(
        "J=1e4\nGamma=1e3\nm=2\nbeta_model=gaussian\nbeta_sigma=1200\n"
        "sweep_tau=0:1e-4:5\nnoise_period=2e-4\npsi0=plus\n"
    )
    assert isinstance(spec.beta_model, GaussianPiecewise)
    assert spec.beta_model.sigma == 1200.0
    assert spec.beta_model.period == 2e-4
    assert spec.axes[0].name == "tau"
    assert len(spec.axes[0].values) == 5
    assert spec.psi0[0] == pytest.approx(1.0 / math.sqrt(2.0))


def test_resolve_missing_required():
    with pytest.raises(ConfigError, match="missing required key 'J'"):
        resolve("Gamma=1e3\nm=2\ntau=1e-5\n")
    with pytest.raises(ConfigError, match="beta_sigma"):
        resolve("J=1e4\nGamma=1e3\nm=2\ntau=1e-5\nbeta_model=gaussian\n")


def test_resolve_rejects_bad_values():
    with pytest.raises(ConfigError, match="must be a number"):
        resolve("J=ten\nGamma=1e3\nm=2\ntau=1e-5\n")
    with pytest.raises(ConfigError, match="empty axis"):
        resolve("J=1e4\nGamma=1e3\nm=2\nsweep_tau=0:1:0\n")
    with pytest.raises(ConfigError, match="psi0"):
        resolve("J=1e4\nGamma=1e3\nm=2\ntau=1e-5\npsi0=sideways\n")
    with pytest.raises(ConfigError, match="kinds"):
        resolve("J=1e4\nGamma=1e3\nm=2\ntau=1e-5\nkinds=s3\n")


def test_simulate_frozen_point(tmp_path, capsys):
    cfg = write(tmp_path, POINT_CFG)
    assert main(["simulate", "--config", cfg]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    data = [l for l in lines if not l.startswith("#")]
    assert len(data) == 1
    cells = data[0].split(",")
    # F, spread, fails per kind in declared order
    assert float(cells[0]) == pytest.approx(0.733914439829361, rel=1e-12)
    assert float(cells[3]) == pytest.approx(0.983596183367902, rel=1e-12)
    assert float(cells[6]) == pytest.approx(0.993937367868618, rel=1e-12)
    assert "# columns: F_unprotected,spread_unprotected,fail_unprotected,F_s1," in out
    assert "# seed=42" in out
    assert "# trials=1" in out


def test_simulate_rejects_sweep_axes(tmp_path, capsys):
    cfg = write(tmp_path, POINT_CFG + "sweep_beta = 0:100:3\n")
    assert main(["simulate", "--config", cfg]) == 2
    assert "sweep" in capsys.readouterr().err


def test_sweep_requires_axis(tmp_path, capsys):
    cfg = write(tmp_path, POINT_CFG)
    assert main(["sweep", "--config", cfg]) == 2
    assert "sweep_" in capsys.readouterr().err


def test_sweep_writes_output_file(tmp_path, capsys):
    cfg = write(tmp_path, POINT_CFG + "sweep_beta = 0:12566.4:3\n")
    out_path = tmp_path / "run.csv"
    assert main(["sweep", "--config", cfg, "--out", str(out_path)]) == 0
    stdout_rows = [
        l for l in capsys.readouterr().out.strip().split("\n") if not l.startswith("#")
    ]
    file_rows = [
        l for l in out_path.read_text().strip().split("\n") if not l.startswith("#")
    ]
    assert stdout_rows == file_rows
    assert len(file_rows) == 3
    assert not (tmp_path / "run.csv.tmp").exists()
    # beta=0 row is exact
    assert file_rows[0].startswith("0,1,0,0,1,0,0,1,0,0")


def test_flag_overrides_config(tmp_path, capsys):
    cfg = write(tmp_path, POINT_CFG)
    assert main(["simulate", "--config", cfg, "--trials", "3", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "# trials=3" in out
    assert "# seed=7" in out


def test_preset_plus_config_override(tmp_path, capsys):
    override = write(tmp_path, "sweep_beta = none\nbeta_model = constant\nbeta_value = 0\ntrials = 1\n")
    assert main(["simulate", "--preset", "fig1a", "--config", override]) == 0
    out = capsys.readouterr().out
    data = [l for l in out.strip().split("\n") if not l.startswith("#")]
    cells = data[0].split(",")
    assert float(cells[0]) == 1.0  # noiseless NOT gate is exact
    assert float(cells[3]) == 1.0
    assert "# preset=fig1a" in out


def test_unknown_preset(capsys):
    assert main(["sweep", "--preset", "fig9z"]) == 2
    assert "unknown preset" in capsys.readouterr().err


def test_no_configuration(capsys):
    assert main(["simulate"]) == 2
    assert "no configuration" in capsys.readouterr().err


def test_domain_error_exit_code(tmp_path, capsys):
    cfg = write(tmp_path, "J = -5\nGamma = 1e3\nm = 2\ntau = 1e-5\n")
    assert main(["simulate", "--config", cfg]) == 3
    assert "domain error" in capsys.readouterr().err


def test_magnus_constant_noise(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "J = 1e4\nGamma = 1e3\nm = 1\ntau = 1e-5\n"
        "beta_model = constant\nbeta_value = 777\n"
        "dgamma_model = constant\ndgamma_value = 333\n",
    )
    assert main(["magnus", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert out.count("-> PASS") == 4
    assert "H1_avg" in out and "H2_avg" in out


def test_magnus_rejects_random_noise(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "J = 1e4\nGamma = 1e3\nm = 1\ntau = 1e-5\n"
        "beta_model = gaussian\nbeta_sigma = 100\n",
    )
    assert main(["magnus", "--config", cfg]) == 2
    assert "constant" in capsys.readouterr().err


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in PRESETS:
        assert f"{name}:" in out
    assert len(PRESETS) == 11


def test_dense_flag_rescales(tmp_path):
    args = Namespace(
        config=None, preset="fig1cd", seed=None, trials=None, workers=None,
        out=None, normalization=None, dense=True,
    )
    merged, preset = _load_merged_config(args)
    assert preset == "fig1cd"
    assert merged["trials"][0] == "10000"
    assert merged["sweep_tau"][0].endswith(":81")
    assert merged["sweep_J"][0].endswith(":81")


def test_console_script_installed(tmp_path):
    cfg = write(tmp_path, POINT_CFG)
    proc = subprocess.run(
        [sys.executable, "-m", "ptdd.cli", "simulate", "--config", cfg],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0.73391443982936" in proc.stdout
