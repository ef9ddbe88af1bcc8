"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so a failed extension build should not make
the package uninstallable.  Run ``python setup.py build_ext --inplace``
to build the extension inside a source checkout.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("twhier._kernels", ["src/twhier/_kernels.pyx"])],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
