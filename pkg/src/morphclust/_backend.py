"""Select the kernel backend at import time.

The compiled extension is preferred. Setting ``MORPHCLUST_PURE_PYTHON=1``
forces the numpy fallback, as does a missing or broken build.
"""

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # not built
    _ckernels = None

AVAILABLE = {"python": _pykernels}
if _ckernels is not None:
    AVAILABLE["cython"] = _ckernels

if os.environ.get("MORPHCLUST_PURE_PYTHON", "") not in ("", "0") or _ckernels is None:
    name = "python"
else:
    name = "cython"
kernels = AVAILABLE[name]
log.debug("morphclust kernel backend: %s", name)


def set_backend(backend):
    """Switch kernels at runtime; returns the previous backend name."""
    global kernels, name
    if backend not in AVAILABLE:
        raise ValueError(f"backend {backend!r} not available; have {sorted(AVAILABLE)}")
    previous = name
    name = backend
    kernels = AVAILABLE[backend]
    return previous


def get_backend():
    return name
