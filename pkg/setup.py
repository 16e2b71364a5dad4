import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SYMRUNS_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                "symruns._ckernels",
                ["src/symruns/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                language="c++",
                # predicates must round exactly like the numpy fallback
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "nonecheck": False,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
