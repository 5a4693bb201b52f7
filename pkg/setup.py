import os

from setuptools import setup
from setuptools.extension import Extension

# The compiled homomorphism-counting kernels are optional: without Cython (or
# with LATTICETQFT_PURE=1) the package falls back to the pure-Python kernels.
ext_modules = []
if not os.environ.get("LATTICETQFT_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("latticetqft._kernels", ["src/latticetqft/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
