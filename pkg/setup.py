"""Build script.

The compiled rational kernel is optional: if Cython (and a C compiler)
are available the extension is built, otherwise the package installs
pure-Python only and falls back to fractions.Fraction at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("monoinv._ratcore", ["src/monoinv/_ratcore.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
