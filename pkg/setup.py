"""Build the optional Cython kernels.

The package works without them (pure-Python fallback is selected at import),
so a missing compiler or Cython only produces a warning.

    python3 setup.py build_ext --inplace
"""
import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TWSPANNER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not found, skipping compiled kernels", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [Extension("twspanner._ckernels", ["src/twspanner/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
                "language_level": "3",
            },
        )

setup(ext_modules=ext_modules)
