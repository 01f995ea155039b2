"""Build the optional compiled multiplication kernel.

Without Cython or a C compiler the package installs as pure Python and the
Python kernel is used.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("POINCARE_DEFORM_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "poincare_deform.algebra._kernel",
                    ["src/poincare_deform/algebra/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
