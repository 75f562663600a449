"""Backend selection for the hot monomial kernels.

The compiled extension is used when it imports and ``BRMULT_PURE`` is unset;
otherwise the pure-Python versions run. Inputs whose exponents do not fit in
a signed 62-bit word are always routed to Python.
"""

from __future__ import annotations

import os
from math import prod

from . import _pykernels

_LIMIT = 1 << 62

try:
    if os.environ.get("BRMULT_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _fits(gens):
    return all(0 <= e < _LIMIT for g in gens for e in g)


def minimal_generators(gens):
    gens = list(gens)
    if _ext is not None and _fits(gens):
        return _ext.minimal_generators(gens)
    return _pykernels.minimal_generators(gens)


def count_standard(gens, bounds):
    if _ext is not None and prod(bounds) < _LIMIT and _fits(gens):
        return _ext.count_standard(gens, bounds)
    return _pykernels.count_standard(gens, bounds)


def pairwise_sums(left, right):
    left, right = list(left), list(right)
    if _ext is not None and _fits(left) and _fits(right):
        mx = max((e for g in left for e in g), default=0)
        mx += max((e for g in right for e in g), default=0)
        if mx < _LIMIT:
            return _ext.pairwise_sums(left, right)
    return _pykernels.pairwise_sums(left, right)
