"""Build script for the optional compiled kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); set TGFA_NO_EXTENSION=1 to skip
the build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TGFA_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "tgfa._speedups",
                    sources=["src/tgfa/_speedups.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
