"""Build script: compiles the finite-field counting kernel when a C toolchain
is available, and falls back to the pure-Python implementation otherwise."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/braidvar/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
