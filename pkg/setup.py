"""Build script: compiles the optional root-finder kernel.

The compiled extension is a performance layer only. If Cython or a C
compiler is unavailable the install proceeds without it and the package
falls back to the numpy implementation at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SF_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "singular_forge.numerics._kernels",
                    sources=["src/singular_forge/numerics/_kernels.pyx"],
                )
            ],
            compiler_directives={"language_level": 3, "embedsignature": True},
        )
    except Exception as exc:  # pragma: no cover - degraded build path
        print(f"warning: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
