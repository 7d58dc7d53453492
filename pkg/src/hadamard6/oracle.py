"""Independent cross-checks for the dilation pipeline.

Three verification paths that share no code with the primary routines they
check: explicit degree-6 coefficient recovery with companion-matrix root
finding (against the grid/bisection root isolation), exhaustive enumeration
of orthogonal sixth-root row triplets (against the branch structure of the
completion theory), and direct re-derivation of the lower-right block
(against the assembly step).
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    DEFAULT_TOL,
    SIXTH_ROOTS,
    TWO_PI,
    DegenerateFamilyError,
    FitError,
    SingularMatrixError,
    Tolerances,
    adjoint,
)
from .dilation import _DEGEN_FACTOR, Quadruple
from .triplet import TripletStats, triplet_stats

_N_FIT = 24
_N_HOLDOUT = 8


@dataclass(frozen=True)
class FundamentalPoly:
    """Coefficients c0..c6 of e^3 * (fundamental expression), lowest first.

    Multiplying by e^3 clears every conjugate of the unimodular e (a
    conjugate is a reciprocal on the circle), leaving an honest polynomial
    of degree at most 6.
    """

    coeffs: np.ndarray
    fit_residual: float


def fit_fundamental_poly(quad: Quadruple, tol: Tolerances | None = None) -> FundamentalPoly:
    """Least-squares recovery of the cleared fundamental polynomial from
    unit-circle samples, validated on held-out samples."""
    t = tol or DEFAULT_TOL
    a, b, c, d = quad.values
    n = _N_FIT + _N_HOLDOUT
    thetas = np.arange(n) * (TWO_PI / n)
    vals, scales = kernels.fundamental_values(a, b, c, d, thetas)
    scale = max(1.0, float(scales.max()))
    if float(np.abs(vals).max()) <= _DEGEN_FACTOR * t.tau_root * scale:
        raise DegenerateFamilyError(
            "fundamental expression vanishes identically on the sample circle"
        )
    e = np.exp(1j * thetas)
    y = e**3 * vals
    hold = np.arange(0, n, n // _N_HOLDOUT)
    fit = np.setdiff1d(np.arange(n), hold)
    vand = np.vander(e, 7, increasing=True)
    coeffs, *_ = np.linalg.lstsq(vand[fit], y[fit], rcond=None)
    cnorm = float(np.abs(coeffs).max())
    residual = float(np.abs(vand[hold] @ coeffs - y[hold]).max())
    if residual > 1e-7 * max(cnorm, 1e-30):
        raise FitError(
            f"held-out residual {residual:.3e} exceeds 1e-7 * ||c|| = {1e-7 * cnorm:.3e}"
        )
    return FundamentalPoly(coeffs, residual)


def _polyval(coeffs: np.ndarray, z: complex) -> complex:
    out = 0.0 + 0.0j
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def _polyval_deriv(coeffs: np.ndarray, z: complex) -> complex:
    out = 0.0 + 0.0j
    n = len(coeffs) - 1
    for k in range(n, 0, -1):
        out = out * z + k * coeffs[k]
    return out


def poly_roots(quad: Quadruple, tol: Tolerances | None = None) -> list[complex]:
    """Unimodular roots of the fundamental polynomial via companion-matrix
    eigenvalues plus Newton polish; the independent twin of circle_roots.

    Preconditions match circle_roots (seed passes the canonical condition);
    degenerate seeds raise DegenerateFamilyError exactly as the grid does.
    """
    t = tol or DEFAULT_TOL
    fp = fit_fundamental_poly(quad, t)
    coeffs = fp.coeffs
    cnorm = float(np.abs(coeffs).max())
    trimmed = coeffs.copy()
    keep = len(trimmed)
    while keep > 1 and abs(trimmed[keep - 1]) <= 1e-12 * cnorm:
        keep -= 1
    trimmed = trimmed[:keep]
    if keep <= 1:
        return []
    raw = np.roots(trimmed[::-1])
    out: list[float] = []
    for z in raw:
        if abs(abs(z) - 1.0) > 1e-6:
            continue
        for _ in range(4):
            dp = _polyval_deriv(coeffs, z)
            if dp == 0.0:
                break
            z = z - _polyval(coeffs, z) / dp
        if abs(abs(z) - 1.0) > 1e-6:
            continue
        z /= abs(z)
        out.append(cmath.phase(z) % TWO_PI)
    out.sort()
    merged: list[float] = []
    for th in out:
        if merged and th - merged[-1] <= t.tau_root:
            continue
        merged.append(th)
    if len(merged) > 1 and (TWO_PI - merged[-1]) + merged[0] <= t.tau_root:
        merged.pop()
    return [cmath.rect(1.0, th) for th in merged]


@dataclass(frozen=True)
class SixthRootTriplet:
    """An ordered pair of sixth-root rows, each orthogonal to the all-ones
    row and to one another, with its partial-sum statistics."""

    row_u: tuple[complex, ...]
    row_v: tuple[complex, ...]
    stats: TripletStats


def sixth_root_rows() -> np.ndarray:
    """All dephased sixth-root rows (1, x1..x5) orthogonal to the all-ones
    row, in enumeration order."""
    rows = []
    for tail in itertools.product(range(6), repeat=5):
        row = [1.0 + 0.0j] + [SIXTH_ROOTS[k] for k in tail]
        if abs(sum(row)) <= 1e-9:
            rows.append(row)
    return np.array(rows, dtype=np.complex128)


def sixth_root_triplets() -> list[SixthRootTriplet]:
    """Exhaustive scan of orthogonal sixth-root row pairs.

    The first entry of each row is pinned to 1 (row phasing is an
    equivalence, cutting the space sixfold).  Cancellations among sixth
    roots are exact in binary64, so orthogonality holds to ~1e-15 here.
    """
    rows = sixth_root_rows()
    gram = rows @ rows.conj().T
    pairs = np.argwhere(np.abs(gram) <= 1e-9)
    out: list[SixthRootTriplet] = []
    for u_i, v_i in pairs:
        if u_i == v_i:
            continue
        u = rows[u_i]
        v = rows[v_i]
        st = triplet_stats(u[1], u[2], v[1], v[2], u[3], v[3])
        out.append(SixthRootTriplet(tuple(u), tuple(v), st))
    return out


def mil_check(u: np.ndarray, v: np.ndarray, tol: Tolerances | None = None) -> float:
    """Residual of the matrix-inversion identity
    (I + UV)^(-1) = I - U (I + VU)^(-1) V, as a max-entry deviation."""
    t = tol or DEFAULT_TOL
    um = np.asarray(u, dtype=np.complex128)
    vm = np.asarray(v, dtype=np.complex128)
    n = um.shape[0]
    eye = np.eye(n)
    inner = eye + vm @ um
    if abs(np.linalg.det(inner)) <= t.tau_root:
        raise SingularMatrixError("I + VU is singular within tolerance")
    rhs = eye - um @ np.linalg.inv(inner) @ vm
    return float(np.abs((eye + um @ vm) @ rhs - eye).max())


def completion_recheck(h: np.ndarray, tol: Tolerances | None = None) -> float:
    """Re-derive the lower-right block of a matrix with orthogonal first
    three rows and columns, and report the max deviation from the actual
    block.  On a true Hadamard matrix the completion is unique, so the
    residual is at rounding level."""
    t = tol or DEFAULT_TOL
    m = np.asarray(h, dtype=np.complex128)
    a = m[:3, :3]
    b = m[:3, 3:]
    c = m[3:, :3]
    d = m[3:, 3:]
    if abs(np.linalg.det(b)) <= t.tau_root:
        raise SingularMatrixError("upper-right block is singular within tolerance")
    d_rec = -c @ adjoint(a) @ adjoint(np.linalg.inv(b))
    return float(np.abs(d_rec - d).max())
