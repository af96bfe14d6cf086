"""Pure-Python fallback for the compiled kernel.

Same API and same arithmetic as ptdd._kernel, written with cmath
scalars to keep per-piece overhead low when the extension is not
available.
"""

from __future__ import annotations

import cmath

import numpy as np

_SERIES_THRESHOLD = 1e-6


def _expm2_entries(a00, a01, a10, a11, t):
    c0 = (a00 + a11) * 0.5
    cx = (a01 + a10) * 0.5
    cy = (a01 - a10) * 0.5j
    cz = (a00 - a11) * 0.5
    lam = cmath.sqrt(cx * cx + cy * cy + cz * cz)
    z = lam * t
    if abs(z) < _SERIES_THRESHOLD:
        z2 = z * z
        cos_l = 1.0 - z2 / 2.0 + z2 * z2 / 24.0
        sinc_l = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0)
    else:
        cos_l = cmath.cos(z)
        sinc_l = cmath.sin(z) / lam
    phase = cmath.exp(-1j * c0 * t)
    mi = -1j * sinc_l * phase
    return (
        phase * cos_l + mi * cz,
        mi * (cx - 1j * cy),
        mi * (cx + 1j * cy),
        phase * cos_l - mi * cz,
    )


def expm2(a, t):
    """exp(-i*A*t) of one 2x2 matrix; twin of the compiled expm2."""
    a = np.asarray(a, dtype=complex)
    u00, u01, u10, u11 = _expm2_entries(
        complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]), t
    )
    return np.array([[u00, u01], [u10, u11]], dtype=complex)


def propagate_flat(codes, gens, durs, c0, c1):
    """Apply a flattened schedule to (c0, c1); see the compiled twin."""
    code_list = np.asarray(codes).tolist()
    gen_list = np.asarray(gens, dtype=complex).reshape(-1, 4).tolist()
    dur_list = np.asarray(durs, dtype=float).tolist()
    c0 = complex(c0)
    c1 = complex(c1)
    for i, code in enumerate(code_list):
        g = gen_list[i]
        if code == 1:
            u00, u01, u10, u11 = g
        else:
            u00, u01, u10, u11 = _expm2_entries(g[0], g[1], g[2], g[3], dur_list[i])
        c0, c1 = u00 * c0 + u01 * c1, u10 * c0 + u11 * c1
    return c0, c1
