"""Build the optional Cython kernel; the package falls back to pure Python without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MACROSCAL_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("macroscal._kernels._ckernels",
                       ["src/macroscal/_kernels/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False,
                                 "cdivision": True},
        )

setup(ext_modules=ext_modules)
