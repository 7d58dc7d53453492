import numpy as np
import pytest

from hadamard6 import _kernels_py, kernels
from hadamard6.core import TWO_PI, unit_from_turns

try:
    from hadamard6 import _kernels as _compiled
except ImportError:
    _compiled = None

needs_compiled = pytest.mark.skipif(
    _compiled is None, reason="compiled kernel not built"
)


def random_quad(rng):
    return tuple(unit_from_turns(t) for t in rng.random(4))


def test_python_scalar_matches_grid():
    rng = np.random.default_rng(50)
    a, b, c, d = random_quad(rng)
    thetas = rng.random(32) * TWO_PI
    vals, scales = _kernels_py.fundamental_values(a, b, c, d, thetas)
    for k, th in enumerate(thetas):
        v, s = _kernels_py.fundamental_point(a, b, c, d, np.exp(1j * th))
        assert abs(v - vals[k]) <= 1e-9 * max(1.0, scales[k])
        assert abs(s - scales[k]) <= 1e-9 * max(1.0, scales[k])


@needs_compiled
def test_compiled_matches_python():
    rng = np.random.default_rng(51)
    for _ in range(30):
        a, b, c, d = random_quad(rng)
        thetas = rng.random(128) * TWO_PI
        v1, s1 = _kernels_py.fundamental_values(a, b, c, d, thetas)
        v2, s2 = _compiled.fundamental_values(a, b, c, d, thetas)
        scale = np.maximum(s1, 1.0)
        assert (np.abs(v1 - v2) / scale).max() < 1e-12
        assert (np.abs(s1 - s2) / scale).max() < 1e-12


@needs_compiled
def test_compiled_scalar_matches_python():
    rng = np.random.default_rng(52)
    for _ in range(100):
        a, b, c, d = random_quad(rng)
        e = unit_from_turns(rng.random())
        v1, s1 = _kernels_py.fundamental_point(a, b, c, d, e)
        v2, s2 = _compiled.fundamental_point(a, b, c, d, e)
        assert abs(v1 - v2) < 1e-12 * max(1.0, s1)
        assert abs(s1 - s2) < 1e-12 * max(1.0, s1)


def test_dispatch_exposes_backend():
    assert kernels.BACKEND in ("compiled", "python")
    vals, scales = kernels.fundamental_values(
        1 + 0j, 1j, -1 + 0j, -1j, np.array([0.1, 0.2])
    )
    assert vals.shape == (2,) and scales.shape == (2,)
