"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise the pure-Python
twin in ``_pykernels`` takes over. Set ``TWSPANNER_PURE=1`` to force the
fallback (the benchmark and parity tests use :func:`get_backend` instead).
"""
import os

from twspanner import _pykernels

try:
    if os.environ.get("TWSPANNER_PURE") == "1":
        raise ImportError("pure-Python kernels forced by TWSPANNER_PURE")
    from twspanner import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"


def get_backend(name=None):
    """Return the kernel module for ``name`` ('cython' or 'python'); default is the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from twspanner import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


sssp = _impl.sssp
dilation_scan = _impl.dilation_scan
greedy_edges = _impl.greedy_edges
tw_table = _impl.tw_table
