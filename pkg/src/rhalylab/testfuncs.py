"""Extremal test functions and certificate machinery.

The boundedness criteria are matched by explicit witnesses: a normalized
logarithm family for the Dirichlet-space regime and a power-weighted
geometric family for positive exponents, both swept along b = 1 - 1/N.
Applying the operator to such a unit-norm function yields a certified
lower bound for the section norm.  Upper bounds come from the classical
Schur row/column-sum test, and a numerical checker for the
Hardy-inequality transference principle (Bennett) closes the loop on the
sufficiency side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ._summation import comp_cumsum
from .cesaro import apply
from .coeffspace import CoeffSeq, norm_sq
from .criteria import SLOPE_BOUNDED_HOLDS, _loglog_slope, _upper_half
from .etagen import EtaSeq


@dataclass(frozen=True)
class Certificate:
    """A numerically certified bound with its construction parameters."""

    kind: str  # lower_bound | schur_upper | bennett
    value: float
    parameters: Mapping[str, float] = field(default_factory=dict)
    witness: CoeffSeq | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", dict(self.parameters))

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "parameters": dict(self.parameters),
        }


def default_truncation(b: float) -> int:
    """Truncation length 16/(1-b), making the dropped b^N tail < e^-16."""
    return int(math.ceil(16.0 / (1.0 - b)))


def b_grid(max_exp: int = 14) -> list[float]:
    """Sweep grid b = 1 - 2^-j, mirroring the b = 1 - 1/N coupling.

    Starts at j = 2 so every b lies strictly inside (1/2, 1).
    """
    return [1.0 - 2.0**-j for j in range(2, max_exp + 1)]


def h_b(b: float, n: int) -> CoeffSeq:
    """Normalized logarithm: coefficients log(1/(1-b))^(-1/2) b^k / k.

    Vanishes at 0 and has Dirichlet norm bounded above and below
    uniformly in b.
    """
    if not (0.5 < b < 1.0):
        raise ValueError("b must lie in (1/2, 1)")
    if n < 1:
        raise ValueError("truncation must be >= 1")
    k = np.arange(1, n + 1, dtype=float)
    scale = math.log(1.0 / (1.0 - b)) ** -0.5
    coeffs = np.zeros(n + 1)
    coeffs[1:] = scale * b**k / k
    return CoeffSeq(coeffs)


def g_b_alpha(b: float, alpha: float, n: int) -> CoeffSeq:
    """Power-weighted geometric family (1-b)^(alpha/2) k^(alpha-1) b^k."""
    if not (0.5 < b < 1.0):
        raise ValueError("b must lie in (1/2, 1)")
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("truncation must be >= 1")
    k = np.arange(1, n + 1, dtype=float)
    coeffs = np.zeros(n + 1)
    coeffs[1:] = (1.0 - b) ** (alpha / 2.0) * k ** (alpha - 1.0) * b**k
    return CoeffSeq(coeffs)


def lower_bound(eta: EtaSeq, alpha: float, beta: float, f: CoeffSeq) -> Certificate:
    """Certified lower bound ||C f|| / ||f|| for the section norm.

    The value equals the Rayleigh quotient of the l2 section at
    truncation len(eta)-1 with the weighted image of f, so it never
    exceeds the section norm.
    """
    denom = norm_sq(f, alpha)
    if denom <= 0.0:
        raise ValueError("test function must have positive norm")
    num = norm_sq(apply(eta, f), beta)
    value = math.sqrt(num / denom)
    return Certificate(
        kind="lower_bound",
        value=value,
        parameters={"alpha": alpha, "beta": beta, "truncation": float(len(eta) - 1)},
        witness=f,
    )


def log_kernel(j: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Bilinear kernel 1 / (sqrt(j m) log(j + m + 1)), indices from 1."""
    return 1.0 / (np.sqrt(j * m) * np.log(j + m + 1.0))


def log_schur_weight(j: np.ndarray) -> np.ndarray:
    """Schur weight j^(-1/2) (1 + log j)^(-1/2) for the log kernel.

    The extra half power of log is the minimal correction that makes
    both row and column sums converge.
    """
    return j**-0.5 * (1.0 + np.log(j)) ** -0.5


def schur_certify(
    entry_fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
    p: np.ndarray,
    n: int,
    block: int = 512,
) -> Certificate:
    """Schur test on the truncation {1..n}^2 of a nonnegative kernel.

    entry_fn(j, m) must evaluate elementwise on broadcast index arrays.
    Certifies |sum a_{j,m} z_j w_m| <= sqrt(c1 c2) ||z|| ||w|| on the
    truncation, with c1, c2 the worst weighted row/column sum ratios.
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != n:
        raise ValueError("weight vector must have length n")
    if np.any(p <= 0.0) or not np.all(np.isfinite(p)):
        raise ValueError("Schur weights must be positive and finite")
    idx = np.arange(1, n + 1, dtype=float)
    col_sums = np.zeros(n)  # sum_j a_{j,m} p_j, per m
    row_sums = np.zeros(n)  # sum_m a_{j,m} p_m, per j
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        a = entry_fn(idx[lo:hi, None], idx[None, :])
        if np.any(a < 0.0):
            raise ValueError("Schur test requires nonnegative entries")
        col_sums += a.T @ p[lo:hi]
        row_sums[lo:hi] = a @ p
    c1 = float(np.max(col_sums / p))
    c2 = float(np.max(row_sums / p))
    return Certificate(
        kind="schur_upper",
        value=math.sqrt(c1 * c2),
        parameters={"c1": c1, "c2": c2, "n": float(n)},
    )


def bennett_check(
    u: np.ndarray, v: np.ndarray, w: np.ndarray, n_grid: list[int]
) -> Certificate:
    """Numerical check of the weighted-inequality transference principle.

    Hypothesis ratio: [sum_{n<=N} u_n (sum_{k<=n} v_k)^2] / [sum v_n];
    conclusion ratio: the same with v_k w_k inside and v_n w_n^2 on the
    right.  The check passes when a bounded hypothesis ratio (slope
    classification) comes with a bounded conclusion ratio.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    w = np.asarray(w, dtype=float).reshape(-1)
    if not (u.size == v.size == w.size):
        raise ValueError("u, v, w must have equal length")
    if np.any(u <= 0.0) or np.any(v <= 0.0) or np.any(w <= 0.0):
        raise ValueError("all sequences must be strictly positive")
    grid = np.asarray(sorted(int(g) for g in n_grid))
    if grid.size < 4:
        raise ValueError("grid too coarse: need at least 4 points")
    if grid[-1] > u.size:
        raise ValueError("grid exceeds sequence length")

    pv = comp_cumsum(v)
    pvw = comp_cumsum(v * w)
    lhs1 = comp_cumsum(u * pv**2)
    rhs1 = pv
    lhs2 = comp_cumsum(u * pvw**2)
    rhs2 = comp_cumsum(v * w**2)
    g = grid - 1
    hyp = lhs1[g] / rhs1[g]
    concl = lhs2[g] / rhs2[g]

    half = _upper_half(list(grid))
    hyp_slope = _loglog_slope(grid[half].astype(float), hyp[half])
    concl_slope = _loglog_slope(grid[half].astype(float), concl[half])
    hyp_bounded = hyp_slope <= SLOPE_BOUNDED_HOLDS
    concl_bounded = concl_slope <= SLOPE_BOUNDED_HOLDS
    passed = concl_bounded or not hyp_bounded
    return Certificate(
        kind="bennett",
        value=float(np.max(concl)),
        parameters={
            "hypothesis_ratio": float(np.max(hyp)),
            "hypothesis_slope": hyp_slope,
            "conclusion_slope": concl_slope,
            "passed": float(passed),
        },
    )
