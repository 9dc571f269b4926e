"""Backend selection for the composition-table search kernels.

The compiled core is used when it was built and ``PRETOR_PURE_PYTHON`` is
unset; otherwise the pure-Python twin is used.  Both return identical
results.
"""
import os

from . import _pykernels

if os.environ.get("PRETOR_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

CompositionTable = _impl.CompositionTable
BACKEND = _impl.BACKEND
PyCompositionTable = _pykernels.CompositionTable


def available_backends():
    """Map backend name to its ``CompositionTable`` class."""
    out = {"python": _pykernels.CompositionTable}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = _ckernels.CompositionTable
    return out
