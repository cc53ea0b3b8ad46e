"""Build script for the optional compiled kernels.

The package works without the extension; muniform.kernels falls back to the
pure-Python implementation when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "muniform._kernels",
        sources=["src/muniform/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
