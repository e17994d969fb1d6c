"""Optional Cython build of the canonical-labelling kernel.

Without Cython or a C compiler the package installs as pure Python and
``origami_tess._native`` falls back to ``_kernels_py``.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ORIGAMI_TESS_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/origami_tess/_kernels.pyx"], compiler_directives={"language_level": 3}, quiet=True
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
