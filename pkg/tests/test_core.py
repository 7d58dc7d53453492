import math

import numpy as np
import pytest

from hadamard6.core import (
    CUBIC_ROOTS,
    NotHermitianError,
    SingularMatrixError,
    Tolerances,
    adjoint,
    det3,
    herm_eigs3,
    inv3,
    mat_mul,
    turns_from_unit,
    unit_from_turns,
)


def fourier3():
    one, w, w2 = CUBIC_ROOTS
    return np.array([[one, one, one], [one, w, w2], [one, w2, w]])


def test_tolerances_validation():
    with pytest.raises(ValueError):
        Tolerances(tau_u=0.0)
    with pytest.raises(ValueError):
        Tolerances(grid_m=32)


def test_unit_from_turns_is_unimodular():
    rng = np.random.default_rng(0)
    for t in rng.random(1000):
        z = unit_from_turns(t)
        assert abs(abs(z) - 1.0) < 1e-15
        assert abs(turns_from_unit(z) - t) < 1e-15


def test_mat_mul_identity():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(mat_mul(np.eye(3), a), a, atol=0)


def test_mat_mul_conjugate_diagonals():
    a = np.diag([1j, 1j, 1j])
    b = np.diag([-1j, -1j, -1j])
    assert np.abs(mat_mul(a, b) - np.eye(3)).max() == 0.0


def test_mat_mul_fourier_unitarity():
    f3 = fourier3()
    assert np.abs(mat_mul(f3, adjoint(f3)) - 3 * np.eye(3)).max() < 1e-15


def test_adjoint_examples():
    sym = np.array([[1.0, 2.0], [2.0, 5.0]], dtype=complex)
    assert np.array_equal(adjoint(sym), sym)
    assert adjoint(np.diag([1j]))[0, 0] == -1j
    f3 = fourier3()
    # unimodular conjugate equals reciprocal
    assert np.abs(adjoint(f3) - (1.0 / f3).T).max() < 1e-15


def test_adjoint_involution():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.array_equal(adjoint(adjoint(a)), a)


def test_inv3_identity_and_fourier():
    assert np.abs(inv3(np.eye(3)) - np.eye(3)).max() == 0.0
    f3 = fourier3()
    assert np.abs(inv3(f3) - adjoint(f3) / 3.0).max() < 1e-15


def test_inv3_singular():
    with pytest.raises(SingularMatrixError):
        inv3(np.ones((3, 3)))


def test_inv3_random_unitary_scaled():
    rng = np.random.default_rng(3)
    for _ in range(200):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        q, _ = np.linalg.qr(g)
        a = q * rng.uniform(0.5, 2.0)
        assert np.abs(inv3(a) @ a - np.eye(3)).max() < 1e-9


def test_herm_eigs3_scalar_and_rank_one():
    assert herm_eigs3(3 * np.eye(3)) == (3.0, 3.0, 3.0)
    lam = herm_eigs3(3 * np.ones((3, 3)))
    assert np.allclose(lam, (0.0, 0.0, 9.0), atol=1e-12)
    f3 = fourier3()
    lam = herm_eigs3(adjoint(f3) @ f3)
    assert np.allclose(lam, (3.0, 3.0, 3.0), atol=1e-12)


def test_herm_eigs3_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        herm_eigs3(np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=complex))


def test_herm_eigs3_against_numpy():
    rng = np.random.default_rng(4)
    for _ in range(300):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        h = g + adjoint(g)
        lam = np.array(herm_eigs3(h))
        ref = np.linalg.eigvalsh(h)
        assert np.abs(lam - ref).max() < 1e-8 * max(1.0, np.abs(ref).max())


def test_herm_eigs3_trace_and_det_invariants():
    rng = np.random.default_rng(5)
    for _ in range(200):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        h = g + adjoint(g)
        lam = herm_eigs3(h)
        assert abs(sum(lam) - h.trace().real) < 1e-9 * max(1.0, abs(h.trace()))
        assert abs(lam[0] * lam[1] * lam[2] - det3(h).real) < 1e-8 * max(
            1.0, abs(det3(h))
        )
