"""Kernel selection.

The compiled extension ``_kernel`` is used when it imports and the ring layout
fits its limits; otherwise, or when ``POINCARE_DEFORM_PURE`` is set, the
pure-Python implementation runs.  Both give identical results.
"""
import os

from . import _kernel_py
from ._errors import CoefficientOverflow, ExponentOverflow

try:
    if os.environ.get("POINCARE_DEFORM_PURE"):
        raise ImportError("compiled kernel disabled by POINCARE_DEFORM_PURE")
    from . import _kernel as _ckernel
except ImportError:
    _ckernel = None

MAX_WORDS = 4
#: below this many term products the Python loop beats the conversion overhead
SMALL = 64

__all__ = ["mul", "backend", "set_backend", "ExponentOverflow"]

_use_compiled = _ckernel is not None


def backend() -> str:
    return "compiled" if _use_compiled else "python"


def set_backend(name: str) -> None:
    """Switch between ``"compiled"`` and ``"python"`` at run time."""
    global _use_compiled
    if name == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        _use_compiled = True
    elif name == "python":
        _use_compiled = False
    else:
        raise ValueError(name)


def mul(ring, a: dict, b: dict, order):
    cut = ring.trunc_key(order)
    if (
        _use_compiled
        and ring.n_words <= MAX_WORDS
        and len(a) * len(b) > SMALL
    ):
        try:
            return _ckernel.mul_terms(ring, a, b, order)
        except CoefficientOverflow:
            pass
    return _kernel_py.mul_terms(ring.one_key, ring.guard, cut, a, b)
