# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of hadamard6._kernels_py (same API, same math).

Scalar C loop over the circle grid; see the pure-python module for the
derivation of the two fitted quadratics and the cross products."""

import numpy as np

ctypedef double complex dc

BACKEND = "compiled"

cdef dc _IMAG = 1j

from libc.math cimport cos, sin


cdef inline double _norm2(dc z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline void _point(dc a, dc b, dc c, dc d, dc e,
                        double* val, double* scale) nogil:
    cdef dc sig = 1.0 + a + b + e
    cdef dc ec = e.conjugate()
    cdef dc k = 1.0 + c.conjugate() + d.conjugate()
    cdef dc l = 1.0 + c * a.conjugate() + d * b.conjugate()
    cdef dc n = 1.0 + c + d
    cdef double abs_sig2 = _norm2(sig)
    cdef dc f, t, delta, psi
    cdef dc r1, ri, rm, s1, si, sm
    cdef int idx
    for idx in range(3):
        if idx == 0:
            f = 1.0
        elif idx == 1:
            f = _IMAG
        else:
            f = -1.0
        t = sig * (k + f.conjugate()) * (l + f * ec)
        delta = n + f
        psi = l + f * ec
        if idx == 0:
            r1 = f * (t - t.conjugate())
            s1 = f * (t - 4.0 + abs_sig2 + _norm2(delta) + _norm2(psi))
        elif idx == 1:
            ri = f * (t - t.conjugate())
            si = f * (t - 4.0 + abs_sig2 + _norm2(delta) + _norm2(psi))
        else:
            rm = f * (t - t.conjugate())
            sm = f * (t - 4.0 + abs_sig2 + _norm2(delta) + _norm2(psi))
    # coefficients of the two quadratics from the three samples
    cdef dc f2 = 0.5 * (r1 - rm)
    cdef dc even = 0.5 * (r1 + rm)
    cdef dc diff = ri - _IMAG * f2
    cdef dc f1 = 0.5 * (even + diff)
    cdef dc f3 = 0.5 * (even - diff)
    cdef dc g2 = 0.5 * (s1 - sm)
    even = 0.5 * (s1 + sm)
    diff = si - _IMAG * g2
    cdef dc g1 = 0.5 * (even + diff)
    cdef dc g3 = 0.5 * (even - diff)
    cdef double na = _norm2(f3 * g1 - f1 * g3)
    cdef double nb = _norm2(f3 * g2 - f2 * g3)
    val[0] = na - nb
    scale[0] = na + nb


def fundamental_values(a, b, c, d, thetas):
    """Fundamental expression at e = exp(i*theta); returns (vals, scales)."""
    cdef dc ca = a, cb = b, cc = c, cd = d
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] th = thetas
    cdef Py_ssize_t m = th.shape[0]
    vals = np.empty(m, dtype=np.float64)
    scales = np.empty(m, dtype=np.float64)
    cdef double[::1] v = vals
    cdef double[::1] s = scales
    cdef Py_ssize_t i
    cdef dc e
    with nogil:
        for i in range(m):
            e = cos(th[i]) + _IMAG * sin(th[i])
            _point(ca, cb, cc, cd, e, &v[i], &s[i])
    return vals, scales


def fundamental_point(a, b, c, d, e):
    """Scalar variant: (value, scale) at one unimodular e."""
    cdef double val, scale
    _point(a, b, c, d, e, &val, &scale)
    return val, scale
