"""Select the compiled kernel when it is importable.

Set ``ORIGAMI_TESS_PURE=1`` to force the pure-Python implementation.
"""

import os

from . import _kernels_py as pure

BACKEND = "python"
canonical_code = pure.canonical_code

if not os.environ.get("ORIGAMI_TESS_PURE"):
    try:
        from . import _kernels as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None
    if compiled is not None:
        canonical_code = compiled.canonical_code
        BACKEND = "cython"
