# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation kernel.

Chains closed-form 2x2 exponentials and instantaneous pulses over a
flattened schedule.  Mirrors ptdd._kernel_py exactly; the two backends
are cross-checked in the tests.
"""

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex ccos(double complex)
    double complex csin(double complex)
    double complex cexp(double complex)
    double cabs(double complex)

DEF SERIES_THRESHOLD = 1e-6


cdef inline void _expm2(double complex a00, double complex a01,
                        double complex a10, double complex a11, double t,
                        double complex* u00, double complex* u01,
                        double complex* u10, double complex* u11) nogil:
    cdef double complex c0 = (a00 + a11) * 0.5
    cdef double complex cx = (a01 + a10) * 0.5
    cdef double complex cy = (a01 - a10) * 0.5j
    cdef double complex cz = (a00 - a11) * 0.5
    cdef double complex lam = csqrt(cx * cx + cy * cy + cz * cz)
    cdef double complex z = lam * t
    cdef double complex z2, cos_l, sinc_l, phase, mi
    if cabs(z) < SERIES_THRESHOLD:
        z2 = z * z
        cos_l = 1.0 - z2 / 2.0 + z2 * z2 / 24.0
        sinc_l = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0)
    else:
        cos_l = ccos(z)
        sinc_l = csin(z) / lam
    phase = cexp(-1j * c0 * t)
    mi = -1j * sinc_l * phase
    u00[0] = phase * cos_l + mi * cz
    u01[0] = mi * (cx - 1j * cy)
    u10[0] = mi * (cx + 1j * cy)
    u11[0] = phase * cos_l - mi * cz


def expm2(double complex[:, ::1] a, double t):
    """exp(-i*A*t) of one 2x2 matrix; entry-level twin of linalg.expm_closed."""
    cdef double complex u00, u01, u10, u11
    _expm2(a[0, 0], a[0, 1], a[1, 0], a[1, 1], t, &u00, &u01, &u10, &u11)
    import numpy as np
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = u00
    out[0, 1] = u01
    out[1, 0] = u10
    out[1, 1] = u11
    return out


def propagate_flat(signed char[::1] codes, double complex[:, :, ::1] gens,
                   double[::1] durs, double complex c0, double complex c1):
    """Apply a flattened schedule to (c0, c1).

    codes[i] == 1 marks an instantaneous pulse whose matrix sits in
    gens[i]; any other code is a constant piece exponentiated over
    durs[i].  Returns the unnormalized final amplitudes.
    """
    cdef Py_ssize_t i, n = codes.shape[0]
    cdef double complex u00, u01, u10, u11, w0, w1
    with nogil:
        for i in range(n):
            if codes[i] == 1:
                u00 = gens[i, 0, 0]
                u01 = gens[i, 0, 1]
                u10 = gens[i, 1, 0]
                u11 = gens[i, 1, 1]
            else:
                _expm2(gens[i, 0, 0], gens[i, 0, 1], gens[i, 1, 0],
                       gens[i, 1, 1], durs[i], &u00, &u01, &u10, &u11)
            w0 = u00 * c0 + u01 * c1
            w1 = u10 * c0 + u11 * c1
            c0 = w0
            c1 = w1
    return complex(c0), complex(c1)
