import os

from setuptools import Extension, setup

# The compiled kernel core is optional: when Cython is unavailable (or the
# build is disabled via LOSCURE_NO_EXTENSION=1) the package installs with the
# NumPy fallback kernels only.
ext_modules = []
if os.environ.get("LOSCURE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("loscure._kernels_cy", ["src/loscure/_kernels_cy.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
