"""Select the necklace kernels at import time.

The compiled ``_ckernels`` extension is used when present; setting
``QUIVERLAB_PURE=1`` forces the pure-Python implementation.
"""
import os

from . import _pykernels

if os.environ.get("QUIVERLAB_PURE"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

least_rotation = _impl.least_rotation
least_rotation_start = _impl.least_rotation_start
bracket_counts = _impl.bracket_counts


def available_backends():
    """Mapping of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
