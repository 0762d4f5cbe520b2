"""Build script: compiles the optional C speedup module.

The package works without the extension (a pure-Python twin is selected at
import time), so any failure here downgrades to a source-only install instead
of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/czmorph/_speedups.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"warning: building without C extension ({exc})")

setup(ext_modules=ext_modules)
