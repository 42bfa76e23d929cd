from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("skeinlat._kernel", ["src/skeinlat/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python fallback is selected at import time, so a missing compiler
    # or Cython only costs speed, never correctness.
    ext_modules = []

setup(ext_modules=ext_modules)
