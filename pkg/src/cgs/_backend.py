"""Kernel backend selection: compiled extension when importable, else pure Python."""

import os

from . import _pykernels

if os.environ.get("CGS_PURE_PYTHON", "").strip() not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    clear_price = _compiled.clear_price
    clear_many = _compiled.clear_many
    BACKEND = "cython"
else:
    clear_price = _pykernels.clear_price
    clear_many = _pykernels.clear_many
    BACKEND = "python"

OK = _pykernels.OK
NOT_BRACKETED = _pykernels.NOT_BRACKETED
MAX_ITER = _pykernels.MAX_ITER


def kernels(name=None):
    """Return the ``(clear_price, clear_many)`` pair for a named backend."""
    if name is None:
        return clear_price, clear_many
    if name == "python":
        return _pykernels.clear_price, _pykernels.clear_many
    if name == "cython":
        if _compiled is None:
            from . import _ckernels as mod  # raises ImportError if not built
        else:
            mod = _compiled
        return mod.clear_price, mod.clear_many
    raise ValueError(f"unknown backend {name!r}")
