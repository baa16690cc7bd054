"""Backend selection for the brute-force kernels.

The compiled extension is used when it was built; otherwise, or when
``FUNK_CONICS_PURE_PYTHON`` is set to a non-empty value, the NumPy
implementation is used.
"""

import os

from . import _pykernels

try:
    if os.environ.get("FUNK_CONICS_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "numpy"

funk_distance_batch = _impl.funk_distance_batch
chord_minimum = _impl.chord_minimum


def available_backends() -> dict:
    """Map of backend name to kernel module, for benchmarks and tests."""
    backends = {"numpy": _pykernels}
    try:
        from . import _ckernels

        backends["cython"] = _ckernels
    except ImportError:
        pass
    return backends
