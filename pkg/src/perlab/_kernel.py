"""Selects the signed-permutation kernel at import time.

The compiled extension is used when it was built; set PERLAB_PURE_PYTHON=1
to force the pure-Python fallback.
"""

import os

if os.environ.get("PERLAB_PURE_PYTHON", "") not in ("", "0"):
    from . import _core_py as core
else:
    try:
        from . import _core as core
    except ImportError:  # extension not built
        from . import _core_py as core

BACKEND = core.BACKEND
compose = core.compose
inverse = core.inverse
length = core.length
act = core.act
is_involution = core.is_involution
enumerate_all = core.enumerate_all
