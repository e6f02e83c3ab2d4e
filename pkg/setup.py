"""Build the optional compiled kernels.

The package works without them; ``rednets.kernels`` falls back to the numpy
implementation when ``rednets._kernels`` cannot be imported.
"""
from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without a compiler toolchain
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "rednets._kernels",
                ["src/rednets/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules)
