"""Backend selection for the tracking kernels.

The compiled ``_ckernels`` extension is used when importable; otherwise the
pure-Python ``_pykernels`` module.  Set ``SEMIGALOIS_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

backend = _pykernels
BACKEND = "python"

if not os.environ.get("SEMIGALOIS_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        backend = _ckernels
        BACKEND = "cython"

OK = _pykernels.OK
STEP_UNDERFLOW = _pykernels.STEP_UNDERFLOW
AMBIGUOUS = _pykernels.AMBIGUOUS
COLLISION = _pykernels.COLLISION
NO_CONVERGENCE = _pykernels.NO_CONVERGENCE


def get_backend(name: str | None = None):
    """Return the kernel module by name (``"cython"``/``"python"``) or the active one."""
    if name is None:
        return backend
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
