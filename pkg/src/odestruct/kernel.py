"""Kernel backend selection.

The compiled kernel is used when it built successfully; set ODESTRUCT_PURE=1
to force the pure-Python reference.  Both expose the same functions on plain
dicts, so everything above this module is backend agnostic.
"""

import os

if os.environ.get("ODESTRUCT_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND

mono_mul = _impl.mono_mul
mono_div = _impl.mono_div
p_add = _impl.p_add
p_sub = _impl.p_sub
p_neg = _impl.p_neg
p_scale = _impl.p_scale
p_mul = _impl.p_mul
p_mul_mono = _impl.p_mul_mono
p_pow = _impl.p_pow


def load_backend(name):
    """Return the named kernel module ('pure' or 'compiled'); for benchmarks."""
    if name == "pure":
        from . import _kernel_py

        return _kernel_py
    if name == "compiled":
        from . import _kernel_cy  # type: ignore[attr-defined]

        return _kernel_cy
    raise ValueError(f"unknown kernel backend {name!r}")
