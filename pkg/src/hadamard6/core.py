"""Unimodular scalars and the small dense-matrix kernel shared by the package.

Matrices are plain numpy complex128 arrays.  Everything here is pure and
allocation-light: the 3x3 inverse goes through the explicit adjugate and the
Hermitian eigenvalues through the trigonometric solution of the
characteristic cubic, so no routine iterates or depends on LAPACK behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

_HALF_SQRT3 = math.sqrt(3.0) / 2.0

#: The sixth roots of unity with exact real/imaginary parts (index k holds
#: exp(2*pi*i*k/6)).  Sums that cancel algebraically then cancel in floating
#: point as well, which the enumeration oracle relies on.
SIXTH_ROOTS = (
    1.0 + 0.0j,
    complex(0.5, _HALF_SQRT3),
    complex(-0.5, _HALF_SQRT3),
    -1.0 + 0.0j,
    complex(-0.5, -_HALF_SQRT3),
    complex(0.5, -_HALF_SQRT3),
)

#: Cubic roots of unity: 1, w, w^2 with w = exp(2*pi*i/3).
CUBIC_ROOTS = (SIXTH_ROOTS[0], SIXTH_ROOTS[2], SIXTH_ROOTS[4])


class Hadamard6Error(Exception):
    """Base class for every error raised by this package."""


class SingularMatrixError(Hadamard6Error):
    """A matrix (or block) that must be invertible is numerically singular."""


class NotHermitianError(Hadamard6Error):
    """Input to the Hermitian eigenvalue solver is not Hermitian."""


class SigmaTooLargeError(Hadamard6Error):
    """A partial row sum exceeds 2, so the row cannot be completed."""


class NotCompletableError(Hadamard6Error):
    """No unimodular completion of a row triplet meets the tolerance."""


class InterpolationError(Hadamard6Error):
    """The held-out sample contradicts the fitted quadratic (degree bug)."""


class DegenerateDenominatorError(Hadamard6Error):
    """Both companion cross products vanish; the pairing is not unique."""


class ZeroDenominatorError(Hadamard6Error):
    """The special-value formula has a vanishing denominator."""


class DegenerateFamilyError(Hadamard6Error):
    """The fundamental expression vanishes identically for this seed."""


class NumericalAnomalyError(Hadamard6Error):
    """Root isolation produced more roots than the degree bound allows."""


class FitError(Hadamard6Error):
    """Least-squares recovery of the fundamental polynomial failed."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the pipeline.

    tau_u gates unimodularity when values are constructed, tau_u_verify when
    computed values are accepted; tau_orth bounds orthogonality residuals;
    tau_root controls root deduplication and singularity checks; grid_m is
    the number of uniform circle samples used for root isolation.
    """

    tau_u: float = 1e-10
    tau_u_verify: float = 1e-8
    tau_orth: float = 1e-8
    tau_root: float = 1e-9
    grid_m: int = 4096

    def __post_init__(self) -> None:
        if min(self.tau_u, self.tau_u_verify, self.tau_orth, self.tau_root) <= 0.0:
            raise ValueError("all tolerances must be positive")
        if self.grid_m < 64:
            raise ValueError("grid_m must be at least 64")


DEFAULT_TOL = Tolerances()


def unit_from_turns(turns: float) -> complex:
    """exp(2*pi*i*turns); exactly unimodular up to one rounding of cos/sin."""
    t = turns - math.floor(turns)
    return complex(math.cos(TWO_PI * t), math.sin(TWO_PI * t))


def turns_from_unit(z: complex) -> float:
    """Phase of z as a fraction of a full circle, in [0, 1)."""
    t = math.atan2(z.imag, z.real) / TWO_PI
    return t + 1.0 if t < 0.0 else t


def unimodular_deviation(z: complex) -> float:
    return abs(abs(z) - 1.0)


def require_unimodular(z: complex, tol: float, what: str = "value") -> complex:
    dev = unimodular_deviation(z)
    if dev > tol:
        raise ValueError(f"{what} is not unimodular: ||z|-1| = {dev:.3e}")
    return complex(z)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Hermitian transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def det3(a: np.ndarray) -> complex:
    """Determinant of a 3x3 matrix, expanded along the first row."""
    m = np.asarray(a, dtype=np.complex128)
    if m.shape != (3, 3):
        raise ValueError("det3 expects a 3x3 matrix")
    return complex(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def inv3(a: np.ndarray, tol: Tolerances | None = None) -> np.ndarray:
    """Inverse of a 3x3 matrix via adjugate over determinant."""
    t = tol or DEFAULT_TOL
    m = np.asarray(a, dtype=np.complex128)
    if m.shape != (3, 3):
        raise ValueError("inv3 expects a 3x3 matrix")
    d = det3(m)
    if abs(d) <= t.tau_root:
        raise SingularMatrixError(f"3x3 matrix singular within tolerance: |det| = {abs(d):.3e}")
    c00 = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    c01 = -(m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
    c02 = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
    c10 = -(m[0, 1] * m[2, 2] - m[0, 2] * m[2, 1])
    c11 = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    c12 = -(m[0, 0] * m[2, 1] - m[0, 1] * m[2, 0])
    c20 = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    c21 = -(m[0, 0] * m[1, 2] - m[0, 2] * m[1, 0])
    c22 = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    adj = np.array(
        [[c00, c10, c20], [c01, c11, c21], [c02, c12, c22]], dtype=np.complex128
    )
    return adj / d


def herm_eigs3(a: np.ndarray, herm_tol: float = 1e-9) -> tuple[float, float, float]:
    """Eigenvalues of a 3x3 Hermitian matrix, ascending.

    Uses the trigonometric solution of the depressed characteristic cubic,
    so the result is deterministic and iteration-free.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.shape != (3, 3):
        raise ValueError("herm_eigs3 expects a 3x3 matrix")
    dev = np.abs(m - m.conj().T).max()
    if dev > herm_tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")
    m = 0.5 * (m + m.conj().T)
    p1 = abs(m[0, 1]) ** 2 + abs(m[0, 2]) ** 2 + abs(m[1, 2]) ** 2
    q = m.trace().real / 3.0
    r0 = m[0, 0].real - q
    r1 = m[1, 1].real - q
    r2 = m[2, 2].real - q
    p2 = r0 * r0 + r1 * r1 + r2 * r2 + 2.0 * p1
    if p2 <= 0.0:
        return (q, q, q)
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    half_det = det3(b).real / 2.0
    half_det = min(1.0, max(-1.0, half_det))
    phi = math.acos(half_det) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + TWO_PI / 3.0)
    mid = 3.0 * q - hi - lo
    lam = sorted((lo, mid, hi))
    return (lam[0], lam[1], lam[2])
