"""Build script: compiles the optional Cython kernels.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any build failure here is
downgraded to a warning. Set KINDEX_SKIP_EXT=1 to skip the build
entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Try to build the accelerator; fall back to pure Python on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            _warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            _warn(exc)


def _warn(exc):
    print(f"WARNING: compiled kernels unavailable, using pure-Python fallback ({exc})")


def _extensions():
    if os.environ.get("KINDEX_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        _warn("Cython not installed")
        return []
    ext = Extension(
        "kindex._kernels._ckernels",
        ["src/kindex/_kernels/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
