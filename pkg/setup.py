"""Build the optional Cython sampling kernel; pure-Python install still
works when Cython or a compiler is unavailable (the numpy fallback is
selected at import)."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/klwishart/_bartlett.pyx"], language_level=3
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
