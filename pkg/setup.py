"""Build hook: compile the optional speedup extension when Cython is present.

The package is fully functional without the extension; `combcert._kernels`
falls back to the pure-Python reference implementation at import time.
Set COMBCERT_PURE=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("COMBCERT_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "combcert._kernels._speedups",
                    ["src/combcert/_kernels/_speedups.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
