import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SATAKE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "satake._speedups",
                    ["src/satake/_speedups.pyx"],
                    language="c++",
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        # No Cython or no compiler: the package falls back to the pure
        # Python kernels at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
