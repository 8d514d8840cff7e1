"""Compensated summation helpers.

Criterion statistics involve tails of slowly decaying series with up to
2^20 terms, where naive left-to-right float64 accumulation loses digits.
Full sums go through ``math.fsum`` (exactly rounded).  Running prefix
sums use a blocked scheme: plain ``np.cumsum`` inside fixed-size blocks,
block offsets recombined with ``fsum``, so rounding never snowballs
across more than one block.
"""

from __future__ import annotations

import math

import numpy as np

_BLOCK = 1024


def comp_sum(x: np.ndarray) -> float | complex:
    """Exactly rounded sum of a real or complex 1-d array."""
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    if np.iscomplexobj(x):
        return complex(math.fsum(x.real), math.fsum(x.imag))
    return math.fsum(x.astype(float, copy=False))


def _comp_cumsum_real(x: np.ndarray) -> np.ndarray:
    out = np.empty(x.size, dtype=float)
    block_sums: list[float] = []
    for lo in range(0, x.size, _BLOCK):
        hi = min(lo + _BLOCK, x.size)
        out[lo:hi] = np.cumsum(x[lo:hi]) + math.fsum(block_sums)
        block_sums.append(math.fsum(x[lo:hi]))
    return out


def comp_cumsum(x: np.ndarray) -> np.ndarray:
    """Compensated cumulative sum of a 1-d real or complex array.

    Per-entry error stays at ~_BLOCK ulps of the local partial sum
    instead of growing with the full array length.
    """
    x = np.asarray(x)
    if x.size <= _BLOCK:
        return np.cumsum(x)
    if np.iscomplexobj(x):
        return _comp_cumsum_real(x.real) + 1j * _comp_cumsum_real(x.imag)
    return _comp_cumsum_real(x.astype(float, copy=False))
