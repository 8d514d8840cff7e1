"""The generalized Cesaro (Rhaly) operator and its finite sections.

The operator maps coefficients a_n to eta_n * (a_0 + ... + a_n).  On the
coefficient side everything is a prefix sum, so products run in O(N).

Between D2_alpha and D2_beta the operator is unitarily equivalent (via
the diagonal weight isometries x_k = sqrt(w(k, alpha)) a_k) to the
lower-triangular l2 matrix

    m_{n,k} = eta_n * sqrt(w(n, beta) / w(k, alpha)),   k <= n,

whose leading sections :class:`SectionMatrix` stores implicitly.
Sections with the first ``row_start`` output rows removed represent the
difference between the operator and its rank-(row_start) output
truncation; the decay of their norms is the compactness probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._summation import comp_cumsum
from .coeffspace import CoeffSeq, weight_vector
from .etagen import EtaSeq

DENSE_CAP = 512


def apply(eta: EtaSeq, f: CoeffSeq) -> CoeffSeq:
    """Apply the operator: b_n = eta_n * (a_0 + ... + a_n).

    The output is truncated to the length of ``eta``; ``f`` must not be
    longer (its tail would bleed into every retained prefix sum).
    """
    if len(eta) < len(f):
        raise ValueError("eta must be at least as long as f")
    a = np.zeros(len(eta), dtype=complex)
    a[: len(f)] = f.coeffs
    return CoeffSeq(eta.eta * comp_cumsum(a))


def f_eta(eta: EtaSeq) -> CoeffSeq:
    """The image of the constant function 1: the power series sum eta_n z^n."""
    return CoeffSeq(eta.eta)


@dataclass(frozen=True)
class SectionMatrix:
    """Implicit (N+1) x (N+1) lower-triangular section on l2.

    Stored as (eta, alpha, beta, size) so products run in O(N).  Rows
    n < row_start are zeroed, which turns the section into the residual
    of the rank-row_start output truncation.
    """

    eta: np.ndarray
    alpha: float
    beta: float
    size: int
    row_start: int = 0

    def __post_init__(self) -> None:
        eta = np.asarray(self.eta, dtype=complex).reshape(-1)
        if self.size < 1 or self.size > eta.size:
            raise ValueError("section size must satisfy 1 <= size <= len(eta)")
        if not (0 <= self.row_start <= self.size):
            raise ValueError("row_start out of range")
        eta = eta[: self.size].copy()
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)
        row_scale = eta * np.sqrt(weight_vector(self.size - 1, self.beta))
        if self.row_start > 0:
            row_scale = row_scale.copy()
            row_scale[: self.row_start] = 0.0
        inv_col_scale = 1.0 / np.sqrt(weight_vector(self.size - 1, self.alpha))
        row_scale.setflags(write=False)
        inv_col_scale.setflags(write=False)
        object.__setattr__(self, "_row_scale", row_scale)
        object.__setattr__(self, "_inv_col_scale", inv_col_scale)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """y_n = row_scale_n * sum_{k<=n} x_k / sqrt(w(k, alpha)), in O(N)."""
        x = np.asarray(x).reshape(-1)
        if x.size != self.size:
            raise ValueError("vector length mismatch")
        return self._row_scale * comp_cumsum(x * self._inv_col_scale)

    def apply_adjoint(self, y: np.ndarray) -> np.ndarray:
        """Adjoint product via suffix sums, in O(N)."""
        y = np.asarray(y).reshape(-1)
        if y.size != self.size:
            raise ValueError("vector length mismatch")
        t = np.conj(self._row_scale) * y
        suffix = comp_cumsum(t[::-1])[::-1]
        return suffix * self._inv_col_scale

    def dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        """Materialize the section; refuses sizes above ``cap``."""
        if self.size > cap:
            raise ValueError(f"dense materialization capped at {cap}")
        return np.tril(np.outer(self._row_scale, self._inv_col_scale))


def section(eta: EtaSeq, alpha: float, beta: float, n: int) -> SectionMatrix:
    """Leading (n+1) x (n+1) section of the l2-reduced operator."""
    if n < 0 or n >= len(eta):
        raise ValueError("need 0 <= n < len(eta)")
    return SectionMatrix(eta.eta, alpha, beta, n + 1)


def apply_section(m: SectionMatrix, x: np.ndarray) -> np.ndarray:
    return m.apply(x)


def apply_adjoint(m: SectionMatrix, y: np.ndarray) -> np.ndarray:
    return m.apply_adjoint(y)
