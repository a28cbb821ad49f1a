"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
(or when ``MACROSCAL_PURE_PYTHON`` is set) the pure-Python mirror is used.
"""
import os

if os.environ.get("MACROSCAL_PURE_PYTHON"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND


def available_backends():
    """Return the kernel modules importable in this environment, by name."""
    from . import _pykernels

    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
