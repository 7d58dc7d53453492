"""Build hook for the optional compiled kernel.

The package is fully functional without the extension: hadamard6.kernels
falls back to the vectorized numpy implementation when the compiled module
is absent.  A failed cythonize therefore only costs speed, never features.
"""

import sys

from setuptools import setup


def _ext_modules():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython unavailable, building without compiled kernels",
              file=sys.stderr)
        return []
    try:
        return cythonize(["src/hadamard6/_kernels.pyx"], language_level=3)
    except Exception as exc:  # pragma: no cover - environment dependent
        print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)
        return []


setup(ext_modules=_ext_modules())
