"""Build script: compiles the optional Cython kernel extension.

Set TRICHAR_PURE_PYTHON=1 to skip the extension entirely; the package
then runs on the numpy fallback kernels selected at import time.
"""

import os

from setuptools import Extension, setup

extensions = []
if os.environ.get("TRICHAR_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "trichar._kernels._speedups",
                    ["src/trichar/_kernels/_speedups.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions)
