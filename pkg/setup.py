# Builds the optional compiled kernel extension. The package works without it
# (a numpy fallback is selected at import); set LOGNLS_NO_EXT=1 to skip the
# build explicitly.

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LOGNLS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("lognls._kernels._compiled", ["src/lognls/_kernels/_compiled.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
