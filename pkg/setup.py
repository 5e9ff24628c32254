"""Build script: compiles the optional Cython kernels.

The package works without the extension (pure-numpy fallback is selected at
import time); a failed extension build therefore only disables the fast path.
Build in place with:  python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ultraad/_kernels/_native.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
