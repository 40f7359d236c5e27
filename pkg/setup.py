"""Build hook: compiles the optional C kernel extension when Cython and a C
compiler are available.  The package works without it (pure-Python kernels),
so any failure here downgrades to a source-only install.

Set NAMECAST_SKIP_EXT=1 to force a pure-Python build.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("NAMECAST_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "namecast._kernels._ckernels",
                    ["src/namecast/_kernels/_ckernels.pyx"],
                    # -ffp-contract=off: the pure-Python twin must produce
                    # bit-identical floats, so FMA contraction is disabled.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
