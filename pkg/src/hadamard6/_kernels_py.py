"""Vectorized numpy implementation of the hot kernel.

The kernel evaluates, for a fixed seed (a, b, c, d) and many circle points
e = exp(i*theta), the real fundamental expression |A|^2 - |B|^2 whose
unimodular zeros are the admissible fifth-column entries.  A and B are cross
products of the coefficients of two quadratics in f:

  R(f) = f * (T(f) - conj(T(f)))                             realness of T
  S(f) = f * (T(f) - 4 + |sig|^2 + |delta(f)|^2 + |psi(f)|^2)  triplet identity

with T the triple product (1+a+b+e)(1+conj(c)+conj(d)+conj(f))
(1+c*conj(a)+d*conj(b)+f*conj(e)).  Both are exact degree-2 polynomials in f,
so their coefficients are recovered from samples at f = 1, i, -1.

hadamard6._kernels is the compiled twin with the same API and math.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_F_SAMPLES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j)


def _solve_quadratic_samples(v1, vi, vm):
    """Coefficients (c0, c1, c2) of the quadratic with values v1, vi, vm at
    f = 1, i, -1."""
    c1 = 0.5 * (v1 - vm)
    even = 0.5 * (v1 + vm)          # c0 + c2
    diff = vi - 1j * c1             # c0 - c2
    c0 = 0.5 * (even + diff)
    c2 = 0.5 * (even - diff)
    return c0, c1, c2


def _cross_products(a, b, c, d, e):
    """A = F3*G1 - F1*G3 and B = F3*G2 - F2*G3 for the two fitted quadratics,
    vectorized over an array of unimodular e."""
    e = np.asarray(e, dtype=np.complex128)
    sig = 1.0 + a + b + e
    ec = np.conj(e)
    k = 1.0 + np.conjugate(c) + np.conjugate(d)     # scalar
    l = 1.0 + c * np.conjugate(a) + d * np.conjugate(b)  # scalar
    n = 1.0 + c + d                                  # scalar, = conj(k)
    abs_sig2 = (sig * np.conj(sig)).real
    r_samples = []
    s_samples = []
    for f in _F_SAMPLES:
        t = sig * (k + np.conjugate(f)) * (l + f * ec)
        r_samples.append(f * (t - np.conj(t)))
        delta = n + f
        psi = l + f * ec
        s_samples.append(
            f * (t - 4.0 + abs_sig2 + abs(delta) ** 2 + (psi * np.conj(psi)).real)
        )
    f1, f2, f3 = _solve_quadratic_samples(*r_samples)
    g1, g2, g3 = _solve_quadratic_samples(*s_samples)
    return f3 * g1 - f1 * g3, f3 * g2 - f2 * g3


def fundamental_values(a, b, c, d, thetas):
    """Fundamental expression at e = exp(i*theta) for an array of angles.

    Returns (vals, scales): vals = |A|^2 - |B|^2 (real, zero exactly at the
    admissible e) and scales = |A|^2 + |B|^2 (the natural magnitude for
    relative thresholds).
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    e = np.cos(thetas) + 1j * np.sin(thetas)
    big_a, big_b = _cross_products(a, b, c, d, e)
    na = (big_a * np.conj(big_a)).real
    nb = (big_b * np.conj(big_b)).real
    return na - nb, na + nb


def fundamental_point(a, b, c, d, e):
    """Scalar variant: (value, scale) at one unimodular e."""
    big_a, big_b = _cross_products(a, b, c, d, np.complex128(e))
    na = (big_a * np.conj(big_a)).real
    nb = (big_b * np.conj(big_b)).real
    return float(na - nb), float(na + nb)
