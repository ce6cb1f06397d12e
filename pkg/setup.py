"""Build hook for the optional compiled kernels.

The extension is marked optional: if Cython or a C compiler with
``unsigned __int128`` support is missing, the pure-Python kernels in
``volrig._kernels_py`` are used instead.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "volrig._kernels",
                ["src/volrig/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
