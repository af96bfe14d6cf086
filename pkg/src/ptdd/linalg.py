"""Exact 2x2 complex linear algebra for non-Hermitian qubit dynamics.

Closed-form matrix exponentials via the Pauli split, an independent
series-based exponential used as a mutual oracle, and density-matrix
helpers.  Everything here is pure and safe to call from any worker; the
Monte Carlo hot path lives in ptdd.kernel instead and is cross-checked
against this module in the tests.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import DegenerateStateError, DomainError

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# below this |lambda*t| the trigonometric form loses digits to
# cancellation while the short series is already exact
SERIES_THRESHOLD = 1e-6


def pauli_decompose(a: np.ndarray) -> tuple[complex, complex, complex, complex]:
    """Split A into (c0, cx, cy, cz) with A = c0*I + cx*sx + cy*sy + cz*sz."""
    a = np.asarray(a, dtype=complex)
    c0 = (a[0, 0] + a[1, 1]) / 2.0
    cx = (a[0, 1] + a[1, 0]) / 2.0
    cy = (a[0, 1] - a[1, 0]) * 0.5j
    cz = (a[0, 0] - a[1, 1]) / 2.0
    return complex(c0), complex(cx), complex(cy), complex(cz)


def pauli_compose(c0: complex, cx: complex, cy: complex, cz: complex) -> np.ndarray:
    return c0 * ID2 + cx * SIGMA_X + cy * SIGMA_Y + cz * SIGMA_Z


def expm_closed(a: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*A*t) for constant 2x2 complex A, exact up to rounding.

    Writes A = c0*I + c.sigma and returns
    exp(-i*c0*t) * (cos(lam*t)*I - i*(sin(lam*t)/lam)*(c.sigma)) with
    lam = sqrt(cx^2 + cy^2 + cz^2).  cos(lam*t) and sin(lam*t)/lam are
    both even in lam, so the complex square-root branch is irrelevant.
    For |lam*t| below SERIES_THRESHOLD a short Taylor series takes over;
    this covers the exceptional point, where c.sigma is nilpotent and
    the exponential is linear in t.
    """
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a.view(float))):
        raise DomainError("non-finite entries in expm_closed input")
    c0, cx, cy, cz = pauli_decompose(a)
    lam = cmath.sqrt(cx * cx + cy * cy + cz * cz)
    z = lam * t
    if abs(z) < SERIES_THRESHOLD:
        z2 = z * z
        cos_l = 1.0 - z2 / 2.0 + z2 * z2 / 24.0
        sinc_l = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0)
    else:
        cos_l = cmath.cos(z)
        sinc_l = cmath.sin(z) / lam
    phase = cmath.exp(-1j * c0 * t)
    out = np.empty((2, 2), dtype=complex)
    mi = -1j * sinc_l * phase
    out[0, 0] = phase * cos_l + mi * cz
    out[0, 1] = mi * (cx - 1j * cy)
    out[1, 0] = mi * (cx + 1j * cy)
    out[1, 1] = phase * cos_l - mi * cz
    return out


def expm_series(a: np.ndarray, t: float) -> np.ndarray:
    """Taylor-series exp(-i*A*t) with scaling and squaring.

    Deliberately shares nothing with expm_closed: no Pauli split, no
    trigonometry, no branch threshold.  Serves as the independent
    oracle for the closed form.
    """
    m = np.asarray(a, dtype=complex) * (-1j * t)
    nrm = float(np.abs(m).sum(axis=1).max())
    s = 0
    while nrm > 0.5:
        nrm /= 2.0
        s += 1
    b = m / (2.0**s)
    term = ID2.copy()
    out = ID2.copy()
    for k in range(1, 64):
        term = term @ b / k
        out = out + term
        if float(np.abs(term).max()) < 1e-20:
            break
    for _ in range(s):
        out = out @ out
    return out


def dm_from_state(psi) -> np.ndarray:
    """Unnormalized |psi><psi|."""
    v = np.asarray(psi, dtype=complex).reshape(2)
    return np.outer(v, v.conj())


def dm_normalize(m: np.ndarray) -> np.ndarray:
    """M / tr(M); norm-loss dynamics make this explicit step mandatory."""
    m = np.asarray(m, dtype=complex)
    tr = m[0, 0] + m[1, 1]
    if abs(tr) < 1e-300:
        raise DegenerateStateError(
            "trace magnitude below 1e-300: total population loss"
        )
    return m / tr
