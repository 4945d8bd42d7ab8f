"""Build script: compiles the principal-value quadrature kernel when Cython
and a C compiler are available.  The package works without it (a NumPy
fallback is selected at import time), so the extension is strictly optional.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "hwl._pv_ext",
                ["src/hwl/_pv_ext.pyx"],
                # -fassociative-math lets the dot products vectorize; the
                # summation order is still fixed per build and per point, so
                # outputs remain bit-identical across thread counts
                extra_compile_args=[
                    "-O3", "-fopenmp", "-fassociative-math",
                    "-fno-signed-zeros", "-fno-trapping-math",
                ],
                extra_link_args=["-fopenmp"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
