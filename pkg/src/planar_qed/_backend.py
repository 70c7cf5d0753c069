"""Select the compiled quadrature core, falling back to pure Python.

Set ``PLANAR_QED_PURE=1`` to force the fallback.
"""
import os

from . import _pycore

pure = _pycore

if os.environ.get("PLANAR_QED_PURE", "") not in ("", "0"):
    core = _pycore
else:
    try:
        from . import _core as core
    except ImportError:
        core = _pycore

COMPILED = core is not _pycore
NAME = "cython" if COMPILED else "python"
