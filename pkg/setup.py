"""Build script: compiles the optional Cython torque kernel.

The package works without the extension (a numpy fallback is selected at
import time), so the extension is marked optional and a failed compile
does not break installation.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dynsolve._kernel_cy",
                ["src/dynsolve/_kernel_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
