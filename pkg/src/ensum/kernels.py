"""Kernel backend selection.

The compiled backend is used when the ``ensum._core`` extension is
importable; set ``ENSUM_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _core_py

BACKEND = "python"
_impl = _core_py

if not os.environ.get("ENSUM_PURE_PYTHON"):
    try:
        from . import _core as _impl  # noqa: F811
    except ImportError:
        _impl = _core_py
    else:
        BACKEND = "cython"

encode_values = _impl.encode_values
xor_codes = _impl.xor_codes
spin_signals = _impl.spin_signals


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _core_py}
    try:
        from . import _core
    except ImportError:
        pass
    else:
        found["cython"] = _core
    return found
