"""Largest-singular-value estimation for finite sections.

The production path is deterministic power iteration on the normal
operator M*M driven entirely by the O(N) implicit section products.  The
oracle is a self-contained dense one-sided Jacobi SVD (numba-compiled
loops), capped at 512 so it stays cheap.

Residual sections (rows above a cut removed) give the numerical
compactness probe: their norms decaying to zero certifies that the rank
truncations converge to the operator in norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .cesaro import DENSE_CAP, SectionMatrix
from .etagen import EtaSeq

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


@dataclass(frozen=True)
class NormEstimate:
    """Power-iteration result; ``value`` lower-bounds the true sigma_max
    up to the convergence residual."""

    value: float
    iterations: int
    residual: float
    converged: bool


def section_norm(
    m: SectionMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 42,
) -> NormEstimate:
    """Largest singular value of a section by power iteration on M*M.

    Deterministic given ``seed`` (fixed positive start vector).  The
    stopping rule tracks the per-step change of the Rayleigh estimate and
    its geometric decay ratio, so the extrapolated remaining error is
    below ``tol`` relative; slow spectral gaps surface as
    ``converged=False``, never as a silently wrong value.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    rng = np.random.default_rng(seed)
    x = rng.random(m.size) + 0.5
    x /= np.linalg.norm(x)
    sigma_prev = -1.0
    change_prev = math.inf
    sigma = 0.0
    iterations = 0
    residual = math.inf
    converged = False
    for iterations in range(1, max_iter + 1):
        y = m.apply(x)
        if not np.all(np.isfinite(y)):
            raise ValueError("NaN/Inf in power iterates: invalid section input")
        sigma = float(np.linalg.norm(y))
        if sigma == 0.0:
            return NormEstimate(0.0, iterations, 0.0, True)
        z = m.apply_adjoint(y)
        zn = float(np.linalg.norm(z))
        if zn == 0.0:
            return NormEstimate(sigma, iterations, 0.0, True)
        x = z / zn
        change = abs(sigma - sigma_prev) / sigma
        # geometric extrapolation of the remaining error
        if change == 0.0:
            remaining = 0.0
        elif change < change_prev:
            ratio = change / change_prev
            remaining = change * ratio / (1.0 - ratio)
        else:
            remaining = math.inf
        residual = change
        if iterations >= 3 and change <= tol and remaining <= tol:
            converged = True
            break
        sigma_prev = sigma
        change_prev = change if change > 0.0 else change_prev
    return NormEstimate(sigma, iterations, residual, converged)


@njit(cache=True)
def _jacobi_sigma_max(a: np.ndarray, tol: float, max_sweeps: int) -> float:
    """One-sided Jacobi: orthogonalize columns of ``a`` in place, return
    the largest column norm (= largest singular value)."""
    n_rows, n_cols = a.shape
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n_cols - 1):
            for j in range(i + 1, n_cols):
                app = 0.0
                aqq = 0.0
                apq = 0.0 + 0.0j
                for k in range(n_rows):
                    p = a[k, i]
                    q = a[k, j]
                    app += (p.real * p.real + p.imag * p.imag)
                    aqq += (q.real * q.real + q.imag * q.imag)
                    apq += np.conj(p) * q
                absg = abs(apq)
                if app == 0.0 or aqq == 0.0:
                    continue
                rel = absg / math.sqrt(app * aqq)
                if rel > off:
                    off = rel
                if rel <= tol:
                    continue
                # phase out apq, then a real 2x2 Jacobi rotation
                u = apq / absg
                tau = (aqq - app) / (2.0 * absg)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                uc = np.conj(u)
                for k in range(n_rows):
                    p = a[k, i]
                    qt = uc * a[k, j]
                    a[k, i] = c * p - s * qt
                    a[k, j] = u * (s * p + c * qt)
        if off <= tol:
            break
    smax = 0.0
    for j in range(n_cols):
        col = 0.0
        for k in range(n_rows):
            q = a[k, j]
            col += q.real * q.real + q.imag * q.imag
        if col > smax:
            smax = col
    return math.sqrt(smax)


def dense_svd_norm(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> float:
    """Largest singular value of a dense matrix by one-sided Jacobi.

    Self-contained reference oracle; refuses matrices larger than the
    dense cap (512).
    """
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if max(m.shape) > DENSE_CAP:
        raise ValueError(f"dense SVD oracle capped at {DENSE_CAP}")
    work = np.array(m, dtype=complex, order="F", copy=True)
    if work.shape[0] < work.shape[1]:
        work = np.conj(work.T).copy(order="F")
    return float(_jacobi_sigma_max(work, tol, max_sweeps))


def residual_norm(
    eta: EtaSeq,
    alpha: float,
    beta: float,
    n_cut: int,
    n_big: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 42,
) -> NormEstimate:
    """Norm of the section with output rows 0 .. n_cut removed.

    This is the finite surrogate for the distance between the operator
    and its rank-(n_cut+1) output truncation; decay in n_cut witnesses
    compactness.
    """
    if not (0 <= n_cut <= n_big < len(eta)):
        raise ValueError("need 0 <= n_cut <= n_big < len(eta)")
    if n_cut == n_big:
        return NormEstimate(0.0, 0, 0.0, True)
    m = SectionMatrix(eta.eta, alpha, beta, n_big + 1, row_start=n_cut + 1)
    return section_norm(m, tol=tol, max_iter=max_iter, seed=seed)
