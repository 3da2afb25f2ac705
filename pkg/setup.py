"""Build script: compiles the optional GF(2) enumeration kernel when Cython is present.

The package is fully functional without the extension; `skrates._kernel`
falls back to the pure-Python implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("skrates._exhaustive", ["src/skrates/_exhaustive.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
