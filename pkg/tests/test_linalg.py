import numpy as np
import pytest

from ptdd.errors import DegenerateStateError, DomainError
from ptdd.linalg import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    dm_from_state,
    dm_normalize,
    expm_closed,
    expm_series,
    pauli_compose,
    pauli_decompose,
)
from ptdd.model import PTParams, h_pt, h_pt_passive

# frozen from an independent scipy.linalg.expm evaluation of
# exp(-i * h_pt_passive(1e4, 1e3) * 10us)
GOLDEN_EXPM = np.array(
    [
        [0.99503729945368691 + 0.0j, 0.0 - 0.098841705995610582j],
        [0.0 - 0.098841705995610596j, 0.97526895825456472 + 0.0j],
    ],
    dtype=complex,
)


def random_matrix(rng):
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


def test_pauli_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = random_matrix(rng)
        c0, cx, cy, cz = pauli_decompose(a)
        back = pauli_compose(c0, cx, cy, cz)
        assert np.abs(back - a).max() < 1e-13


def test_pauli_decompose_basis():
    assert pauli_decompose(ID2) == (1.0, 0.0, 0.0, 0.0)
    assert pauli_decompose(SIGMA_X) == (0.0, 1.0, 0.0, 0.0)
    assert pauli_decompose(SIGMA_Y) == (0.0, 0.0, 1.0, 0.0)
    assert pauli_decompose(SIGMA_Z) == (0.0, 0.0, 0.0, 1.0)


def test_expm_closed_golden():
    u = expm_closed(h_pt_passive(PTParams(1e4, 1e3)), 10e-6)
    assert np.abs(u - GOLDEN_EXPM).max() < 1e-12


def test_expm_closed_identity_at_zero_time():
    rng = np.random.default_rng(4)
    u = expm_closed(random_matrix(rng), 0.0)
    assert np.abs(u - ID2).max() < 1e-15


def test_expm_closed_vs_series_random():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(300):
        a = random_matrix(rng)
        t = float(rng.uniform(0.0, 2.0))
        worst = max(worst, float(np.abs(expm_closed(a, t) - expm_series(a, t)).max()))
    assert worst < 1e-10


def test_expm_closed_nilpotent_is_linear():
    # strictly upper triangular: the Pauli vector part squares to zero,
    # so exp(-iAt) = I - iAt exactly
    a = np.array([[0.0, 2.0], [0.0, 0.0]], dtype=complex)
    for t in (1e-9, 0.37, 5.0):
        expected = ID2 - 1j * a * t
        assert np.abs(expm_closed(a, t) - expected).max() < 1e-12 * max(1.0, t)


def test_expm_closed_exceptional_point():
    # J = Gamma makes the traceless part nilpotent through cancellation
    h = h_pt(PTParams(2e3, 2e3))
    t = 1e-4
    assert np.abs(expm_closed(h, t) - expm_series(h, t)).max() < 1e-10


def test_expm_closed_branch_continuity():
    # identical result on both sides of the series threshold
    a = SIGMA_X.copy()  # lambda = 1
    for t in (0.9999e-6, 1.0001e-6):
        err = np.abs(expm_closed(a, t) - expm_series(a, t)).max()
        assert err < 1e-12


def test_expm_against_scipy():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    rng = np.random.default_rng(6)
    for _ in range(100):
        a = random_matrix(rng)
        t = float(rng.uniform(0.0, 1.5))
        ref = scipy_linalg.expm(-1j * a * t)
        assert np.abs(expm_closed(a, t) - ref).max() < 1e-10
        assert np.abs(expm_series(a, t) - ref).max() < 1e-10


def test_expm_closed_rejects_nonfinite():
    bad = np.array([[np.inf, 0.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(DomainError):
        expm_closed(bad, 1.0)


def test_dm_from_state():
    rho = dm_from_state((1.0, 1.0))
    assert np.abs(rho - np.ones((2, 2))).max() == 0.0
    rho = dm_from_state((2.0, 0.0))
    assert rho[0, 0] == 4.0 and rho[1, 1] == 0.0


def test_dm_normalize():
    rho = dm_normalize(np.diag([3.0, 1.0]).astype(complex))
    assert abs(np.trace(rho) - 1.0) < 1e-15
    assert abs(rho[0, 0] - 0.75) < 1e-15


def test_dm_normalize_rejects_zero_trace():
    with pytest.raises(DegenerateStateError):
        dm_normalize(np.zeros((2, 2), dtype=complex))
