"""Coefficient-sequence representation of analytic functions on the disc
and the weighted coefficient norm of the spaces D2_alpha.

A function f(z) = sum a_n z^n is stored as its truncated coefficient
vector (a_0 .. a_N).  The squared norm in D2_alpha is

    |a_0|^2 + sum_{n>=1} n^(1-alpha) |a_n|^2,

truncated at the stored length.  The n=0 weight is pinned to 1 (never
0^(1-alpha)).  Any real alpha is allowed: alpha = -1 gives the derivative
Hardy space S2, alpha = 0 the Dirichlet space, alpha = gamma + 2 the
Bergman space A2_gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SpaceParams:
    """Identifies the space D2_alpha by its real exponent."""

    alpha: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")


@dataclass(frozen=True)
class CoeffSeq:
    """Truncated Taylor coefficient vector a_0 .. a_N (complex entries)."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if arr.size < 1:
            raise ValueError("coefficient vector must have length >= 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def __len__(self) -> int:
        return self.coeffs.size


def weight(n: int, alpha: float) -> float:
    """Coefficient weight: 1 at n = 0, n^(1-alpha) for n >= 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1.0
    return float(n) ** (1.0 - alpha)


def weight_vector(n_max: int, alpha: float) -> np.ndarray:
    """Weights for n = 0 .. n_max as an array (w[0] = 1)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    n = np.arange(n_max + 1, dtype=float)
    w = np.empty(n_max + 1)
    w[0] = 1.0
    if n_max >= 1:
        w[1:] = n[1:] ** (1.0 - alpha)
    return w


def _alpha_of(space: SpaceParams | float) -> float:
    if isinstance(space, SpaceParams):
        return space.alpha
    return float(space)


def norm_sq(f: CoeffSeq, space: SpaceParams | float) -> float:
    """Truncated squared D2_alpha norm of f (monotone in the truncation)."""
    alpha = _alpha_of(space)
    w = weight_vector(len(f) - 1, alpha)
    terms = w * np.abs(f.coeffs) ** 2
    # sum small-to-large: the weights are monotone in n, so one of the two
    # ends always carries the small terms
    return math.fsum(terms)


def monomial(n: int) -> CoeffSeq:
    """The monomial z^n as a coefficient vector of length n + 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    return CoeffSeq(c)
