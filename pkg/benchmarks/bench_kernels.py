"""Benchmark the compiled kernel against the pure-numpy fallback.

Times the two operations the pipeline leans on: full-grid evaluation of the
fundamental expression (root isolation) and scalar evaluation (bisection
refinement).  Run as `python benchmarks/bench_kernels.py [--grid M]`.
"""

import argparse
import statistics
import time

import numpy as np

from hadamard6 import _kernels_py
from hadamard6.core import TWO_PI, unit_from_turns

try:
    from hadamard6 import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    a, b, c, d = (unit_from_turns(t) for t in rng.random(4))
    thetas = np.arange(args.grid) * (TWO_PI / args.grid)
    point = unit_from_turns(0.3)

    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.append(("compiled", _compiled))
    else:
        print("compiled kernel not built; timing the fallback only")

    grid_best = {}
    for name, mod in backends:
        best, med = _time(
            lambda m=mod: m.fundamental_values(a, b, c, d, thetas), args.repeats
        )
        grid_best[name] = best
        print(f"grid  {args.grid:6d}  {name:9s} best {best * 1e3:8.3f} ms  "
              f"median {med * 1e3:8.3f} ms")

    scalar_best = {}
    for name, mod in backends:
        best, med = _time(
            lambda m=mod: m.fundamental_point(a, b, c, d, point),
            args.repeats * 20,
        )
        scalar_best[name] = best
        print(f"point          {name:9s} best {best * 1e6:8.3f} us  "
              f"median {med * 1e6:8.3f} us")

    if _compiled is not None:
        print(f"speedup: grid x{grid_best['python'] / grid_best['compiled']:.1f}, "
              f"point x{scalar_best['python'] / scalar_best['compiled']:.1f}")
        v1, s1 = _kernels_py.fundamental_values(a, b, c, d, thetas)
        v2, s2 = _compiled.fundamental_values(a, b, c, d, thetas)
        dev = float((np.abs(v1 - v2) / np.maximum(s1, 1.0)).max())
        print(f"agreement: max relative deviation {dev:.2e}")


if __name__ == "__main__":
    main()
