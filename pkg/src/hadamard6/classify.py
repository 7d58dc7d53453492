"""Verification and classification of order-6 complex Hadamard matrices.

Covers the Hadamard check and dephasing, the quick membership indicators for
the three-parameter degenerate family (a -1 in the core, vanishing sums of
order 2 or 4, vanishing 3x3 minors), detection of the isolated all-cubic
matrix via an equivalence fingerprint, the contraction precheck and the
canonical-seed condition that gate the dilation pipeline, and the
unbiasedness test between two bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    CUBIC_ROOTS,
    DEFAULT_TOL,
    SIXTH_ROOTS,
    Tolerances,
    adjoint,
    det3,
    herm_eigs3,
)

_PAIRS6 = tuple(itertools.combinations(range(6), 2))
_TRIPLES6 = tuple(itertools.combinations(range(6), 3))
_QUADS6 = tuple(itertools.combinations(range(6), 4))


@dataclass(frozen=True)
class K63Flags:
    """Quick indicators for membership in the degenerate three-parameter
    family; any true flag certifies membership."""

    core_minus_one: bool
    pair_sum: bool
    quad_sum: bool

    @property
    def any(self) -> bool:
        return self.core_minus_one or self.pair_sum or self.quad_sum


@dataclass(frozen=True)
class ClassReport:
    is_hadamard: bool
    residual: float
    k63_core_minus_one: bool
    k63_vanishing_pair: bool
    k63_vanishing_quad: bool
    vanishing_minor: bool
    s6_equivalent: bool
    max_eig_estar_e: float


def is_hadamard(h: np.ndarray, tol: Tolerances | None = None) -> tuple[bool, float]:
    """Hadamard flag and residual: max of the Gram deviation from n*I and the
    worst entry unimodularity deviation."""
    t = tol or DEFAULT_TOL
    m = np.asarray(h, dtype=np.complex128)
    n = m.shape[0]
    gram = m @ m.conj().T
    res_gram = np.abs(gram - n * np.eye(n)).max()
    res_unit = np.abs(np.abs(m) - 1.0).max()
    residual = float(max(res_gram, res_unit))
    return residual <= t.tau_orth, residual


def dephase(h: np.ndarray) -> np.ndarray:
    """Equivalent matrix with all-ones first row and column."""
    m = np.asarray(h, dtype=np.complex128).copy()
    row_scale = np.conj(m[:, 0]) / np.abs(m[:, 0])
    m *= row_scale[:, None]
    col_scale = np.conj(m[0, :]) / np.abs(m[0, :])
    m *= col_scale[None, :]
    return m


def is_dephased(h: np.ndarray, tol: Tolerances | None = None) -> bool:
    t = tol or DEFAULT_TOL
    m = np.asarray(h)
    border = np.concatenate([m[0, :], m[:, 0]])
    return bool(np.abs(border - 1.0).max() <= t.tau_u_verify)


def k63_indicators(h: np.ndarray, tol: Tolerances | None = None) -> K63Flags:
    """Degenerate-family indicators of a dephased Hadamard matrix: a core
    entry at -1, a vanishing row/column sum of order 2, or of order 4."""
    t = tol or DEFAULT_TOL
    m = np.asarray(h, dtype=np.complex128)
    core = m[1:, 1:]
    core_minus_one = bool(np.abs(core + 1.0).min() <= t.tau_u_verify)
    pair_sum = False
    quad_sum = False
    for line in itertools.chain(m, m.T):
        for i, j in _PAIRS6:
            if abs(line[i] + line[j]) <= t.tau_orth:
                pair_sum = True
        for sub in _QUADS6:
            if abs(line[list(sub)].sum()) <= t.tau_orth:
                quad_sum = True
    return K63Flags(core_minus_one, pair_sum, quad_sum)


def vanishing_minor(h: np.ndarray, tol: Tolerances | None = None) -> bool:
    """True when some 3x3 minor vanishes within 6*tau_orth (the determinant
    of a unimodular 3x3 block moves by at most ~6x an entry perturbation)."""
    t = tol or DEFAULT_TOL
    m = np.asarray(h, dtype=np.complex128)
    bound = 6.0 * t.tau_orth
    for rows in _TRIPLES6:
        block_rows = m[list(rows), :]
        for cols in _TRIPLES6:
            if abs(det3(block_rows[:, list(cols)])) <= bound:
                return True
    return False


def fingerprint(h: np.ndarray) -> np.ndarray:
    """Equivalence fingerprint: lexicographically sorted (re, |im|) pairs of
    the quartic products h[i,j]h[k,l]conj(h[i,l]h[k,j]) over all row pairs
    i<k and column pairs j<l.

    Rephasing leaves each product unchanged; permutations permute the
    multiset and at most conjugate its elements, which (re, |im|) absorbs.
    Equal fingerprints are a strong heuristic for equivalence, never a proof;
    distinct fingerprints certify inequivalence.
    """
    m = np.asarray(h, dtype=np.complex128)
    vals = np.empty((len(_PAIRS6) * len(_PAIRS6), 2), dtype=np.float64)
    idx = 0
    for i, k in _PAIRS6:
        for j, l in _PAIRS6:
            z = m[i, j] * m[k, l] * np.conj(m[i, l] * m[k, j])
            vals[idx, 0] = z.real
            vals[idx, 1] = abs(z.imag)
            idx += 1
    order = np.lexsort((vals[:, 1], vals[:, 0]))
    return vals[order]


def fingerprint_distance(fp1: np.ndarray, fp2: np.ndarray) -> float:
    """Max elementwise deviation between two sorted fingerprints."""
    return float(np.abs(fp1 - fp2).max())


def s6_detect(h: np.ndarray, tol: Tolerances | None = None) -> bool:
    """Heuristic equivalence test against the isolated all-cubic matrix."""
    t = tol or DEFAULT_TOL
    return fingerprint_distance(fingerprint(h), _tao_fingerprint()) <= t.tau_orth


def contraction_precheck(e_block: np.ndarray,
                         tol: Tolerances | None = None) -> tuple[bool, float]:
    """Largest eigenvalue of E*E and whether it obeys the embedding bound
    lambda_max <= 6 that every 3x3 submatrix of a Hadamard matrix satisfies."""
    t = tol or DEFAULT_TOL
    m = np.asarray(e_block, dtype=np.complex128)
    lam = herm_eigs3(adjoint(m) @ m)[-1]
    return lam <= 6.0 + t.tau_orth, float(lam)


def elliptical(x: complex, y: complex) -> complex:
    """x + y + x^2 + y^2 + x*y^2 + x^2*y; a vanishing value pairs y with x."""
    return x + y + x * x + y * y + x * y * y + x * x * y


def canonical_condition(quad, tol: Tolerances | None = None) -> tuple[bool, list[float]]:
    """Nondegeneracy condition on a seed quadruple.

    Evaluates the eight factors (b-1), (c-1), (b-d^2), (c-d^2), (b-c),
    (bc-d) and the two elliptical values of (b, d) and (c, d); the seed is
    admissible when none vanishes within tau_orth.
    """
    t = tol or DEFAULT_TOL
    a, b, c, d = quad.values if hasattr(quad, "values") else quad
    factors = [
        b - 1.0,
        c - 1.0,
        b - d * d,
        c - d * d,
        b - c,
        b * c - d,
        elliptical(b, d),
        elliptical(c, d),
    ]
    mags = [abs(f) for f in factors]
    return min(mags) > t.tau_orth, mags


def unbiased(h1: np.ndarray, h2: np.ndarray,
             tol: Tolerances | None = None) -> tuple[bool, float]:
    """Whether the column bases of two matrices are unbiased.

    Columns are normalized to unit length (for a Hadamard matrix this is the
    usual 1/sqrt(6) scaling, and it lets the standard basis be passed as the
    identity matrix); the deviation is max over column pairs of
    ||<u,v>|^2 - 1/6|.
    """
    t = tol or DEFAULT_TOL
    m1 = np.asarray(h1, dtype=np.complex128)
    m2 = np.asarray(h2, dtype=np.complex128)
    u = m1 / np.linalg.norm(m1, axis=0, keepdims=True)
    v = m2 / np.linalg.norm(m2, axis=0, keepdims=True)
    cross = np.abs(u.conj().T @ v) ** 2
    dev = float(np.abs(cross - 1.0 / 6.0).max())
    return dev <= t.tau_orth, dev


def classify_matrix(h: np.ndarray, tol: Tolerances | None = None) -> ClassReport:
    """Full classification sweep used by the pipeline and the CLI."""
    t = tol or DEFAULT_TOL
    flag, residual = is_hadamard(h, t)
    deph = dephase(h) if flag else np.asarray(h, dtype=np.complex128)
    k63 = k63_indicators(deph, t)
    lam = contraction_precheck(deph[:3, :3], t)[1]
    return ClassReport(
        is_hadamard=flag,
        residual=residual,
        k63_core_minus_one=k63.core_minus_one,
        k63_vanishing_pair=k63.pair_sum,
        k63_vanishing_quad=k63.quad_sum,
        vanishing_minor=vanishing_minor(deph, t),
        s6_equivalent=s6_detect(deph, t) if flag else False,
        max_eig_estar_e=lam,
    )


def fourier6() -> np.ndarray:
    """The order-6 Fourier matrix, from the exact sixth-root table."""
    return np.array(
        [[SIXTH_ROOTS[(j * k) % 6] for k in range(6)] for j in range(6)],
        dtype=np.complex128,
    )


def _cubic_row_candidates(prefix, fixed_rows):
    """Rows (prefix, x3..x6) over cubic roots orthogonal to the fixed rows."""
    out = []
    for tail in itertools.product(CUBIC_ROOTS, repeat=4):
        row = np.array(list(prefix) + list(tail), dtype=np.complex128)
        if all(abs(np.vdot(r, row)) <= 1e-9 for r in fixed_rows):
            out.append(row)
    return out


@lru_cache(maxsize=1)
def _tao_matrix_cached() -> np.ndarray:
    """Reconstruct the isolated all-cubic matrix by completing the partial
    array forced by a cubic row and column meeting in a common 1.

    Orthogonality of the first three rows pins the free entries of the third
    row up to equivalence; the remaining three rows are found by exhausting
    cubic-root completions.  The search result is unique up to equivalence.
    """
    one, w, w2 = CUBIC_ROOTS
    rows = [
        np.ones(6, dtype=np.complex128),
        np.array([one, one, w, w, w2, w2], dtype=np.complex128),
        np.array([one, w, one, w2, w, w2], dtype=np.complex128),
    ]
    prefixes = [(one, w), (one, w2), (one, w2)]
    cands = [_cubic_row_candidates(p, rows) for p in prefixes]
    for r3 in cands[0]:
        for r4 in cands[1]:
            if abs(np.vdot(r3, r4)) > 1e-9:
                continue
            for r5 in cands[2]:
                if abs(np.vdot(r3, r5)) > 1e-9 or abs(np.vdot(r4, r5)) > 1e-9:
                    continue
                h = np.vstack(rows + [r3, r4, r5])
                h.setflags(write=False)
                return h
    raise RuntimeError("cubic completion search failed")  # pragma: no cover


def tao_s6() -> np.ndarray:
    """The isolated spectral matrix with all entries cubic roots of unity."""
    return _tao_matrix_cached().copy()


@lru_cache(maxsize=1)
def _tao_fingerprint() -> np.ndarray:
    return fingerprint(_tao_matrix_cached())
