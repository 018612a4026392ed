"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``QUATMP_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _fallback

if os.environ.get("QUATMP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

mix64 = _impl.mix64
counter_uniforms = _impl.counter_uniforms
ks_two_sample = _impl.ks_two_sample
stieltjes_sums = _impl.stieltjes_sums
max_pair_gap = _impl.max_pair_gap

__all__ = [
    "BACKEND",
    "mix64",
    "counter_uniforms",
    "ks_two_sample",
    "stieltjes_sums",
    "max_pair_gap",
]
