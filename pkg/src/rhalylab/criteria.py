"""Boundedness/compactness criteria on dyadic grids.

For an eta sequence and target exponent beta the central quantity is the
tail sum

    A_N = sum_{n >= N} n^(1-beta) |eta_n|^2,

scaled by phi(N) = 1, log N, or N^alpha according to the regime of the
source exponent alpha.  Big-oh / little-oh behaviour cannot be decided
from a finite truncation, so verdicts are slope classifications of
S_N = A_N * phi(N) over the upper half of a dyadic grid, and
"inconclusive" is a first-class outcome.

Truncation control: for the generated families (power-log, classical
Cesaro weights, measure moments) a closed-form majorant of the tail
beyond the stored length is available.  Each verdict is computed twice,
from the raw truncated S_N and from S_N with the majorant added; the two
must agree, otherwise the verdict degrades to "inconclusive" (or to
"fails" when the majorant is infinite, since a divergent full sum
already violates every criterion).  Explicit user sequences are treated
as finitely supported, so their tail majorant is exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._summation import comp_cumsum
from .etagen import EtaSeq, MeasureSpec

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

# log-log slope thresholds (declared design constants, calibrated on the
# generated families)
SLOPE_BOUNDED_HOLDS = 0.05
SLOPE_BOUNDED_FAILS = 0.09
SLOPE_COMPACT_HOLDS = -0.05
SLOPE_COMPACT_FAILS = -0.02


@dataclass(frozen=True)
class CriterionReport:
    """Scan of the criterion statistic over a dyadic grid.

    grid entries are (N, A_N, S_N) with S_N = A_N * phi(N); ``slope`` is
    the log-log regression slope of S_N over the upper half of the grid.
    """

    regime: str  # alpha_neg | alpha_zero | alpha_pos
    grid: tuple[tuple[int, float, float], ...]
    sup_s: float
    slope: float
    verdict_bounded: str
    verdict_compact: str
    tail_majorant: float = math.inf
    statistic: str = "tail"

    def to_json_dict(self) -> dict:
        return {
            "regime": self.regime,
            "statistic": self.statistic,
            "grid": [[n, a, s] for n, a, s in self.grid],
            "sup_S": self.sup_s,
            "slope": self.slope,
            "verdict_bounded": self.verdict_bounded,
            "verdict_compact": self.verdict_compact,
            "tail_majorant": self.tail_majorant,
        }

    def to_csv(self) -> str:
        lines = ["N,A_N,S_N"]
        for n, a, s in self.grid:
            lines.append(f"{n},{a:.17g},{s:.17g}")
        return "\n".join(lines) + "\n"


def dyadic_grid(min_exp: int, max_exp: int) -> list[int]:
    """The grid N = 2^min_exp .. 2^max_exp."""
    if min_exp < 0 or max_exp < min_exp:
        raise ValueError("need 0 <= min_exp <= max_exp")
    return [2**k for k in range(min_exp, max_exp + 1)]


def tail_sum(eta: EtaSeq, beta: float, n_start: int) -> float:
    """Truncated A_N: sum_{n = n_start}^{len-1} n^(1-beta) |eta_n|^2.

    Summed with compensated summation from the small (large-n) end.
    """
    if not (1 <= n_start <= len(eta)):
        raise ValueError("need 1 <= n_start <= len(eta)")
    if n_start == len(eta):
        return 0.0
    n = np.arange(n_start, len(eta), dtype=float)
    terms = n ** (1.0 - beta) * np.abs(eta.eta[n_start:]) ** 2
    return math.fsum(terms[::-1])


def tail_majorant(eta: EtaSeq, beta: float) -> float:
    """Closed-form upper bound for sum_{n >= len(eta)} n^(1-beta)|eta_n|^2.

    Uses the provenance parameters of the generated families; returns 0
    for explicit (finitely supported) sequences and +inf when the full
    series provably diverges at the generated decay rate.
    """
    m = len(eta)  # first index beyond the stored data
    tag = eta.provenance_tag
    if tag == "custom":
        return 0.0
    if tag in ("classical-cesaro", "power-log"):
        s = float(eta.params["s"])
        r = float(eta.params.get("r", 0.0))
        if r < 0.0:
            return math.inf
        return _power_log_tail(2.0 * s + beta - 2.0, 2.0 * r, m)
    if tag == "measure-moments":
        # (atoms + density)^2 <= 2 atoms^2 + 2 density^2
        total = 0.0
        mass = float(eta.params.get("atom_mass", 0.0))
        b = float(eta.params.get("atom_max_t", 0.0))
        if mass > 0.0 and b > 0.0:
            total += 2.0 * _poly_geometric_tail(1.0 - beta, b * b, mass * mass, m)
        scale = float(eta.params.get("scale", 0.0))
        if scale > 0.0:
            gamma = float(eta.params["gamma"])
            # B(n+1, gamma+1) <= Gamma(gamma+1) n^-(gamma+1)
            const = 2.0 * (scale * math.gamma(gamma + 1.0)) ** 2
            total += const * _power_log_tail(2.0 * (gamma + 1.0) + beta - 2.0, 0.0, m)
        return total
    return math.inf


def _power_log_tail(e: float, two_r: float, m: int) -> float:
    """Upper bound for sum_{n > m-1} n^(-(e+1)) log(n)^(-two_r), two_r >= 0."""
    if e > 0.0:
        return float(m) ** (-e) * math.log(m) ** (-two_r) / e
    if e == 0.0 and two_r > 1.0:
        return math.log(m) ** (1.0 - two_r) / (two_r - 1.0)
    return math.inf


def _poly_geometric_tail(p: float, q: float, const: float, m: int) -> float:
    """Upper bound for const * sum_{n >= m} n^p q^n with 0 < q < 1."""
    if q <= 0.0:
        return 0.0
    t0 = const * float(m) ** p * q**m
    if t0 == 0.0:
        return 0.0
    rho = q * (1.0 + 1.0 / m) ** max(p, 0.0)
    if rho >= 1.0:
        return math.inf
    return t0 / (1.0 - rho)


def _loglog_slope(ns: np.ndarray, ss: np.ndarray) -> float:
    """Least-squares slope of log S against log N; zero-S grids are flat."""
    pos = ss > 0.0
    if np.count_nonzero(pos) < 2:
        return 0.0
    x = np.log(ns[pos])
    y = np.log(ss[pos])
    x = x - x.mean()
    return float(np.dot(x, y) / np.dot(x, x))


def _classify(slope: float, all_zero: bool = False) -> tuple[str, str]:
    """(bounded, compact) verdicts from a log-log slope."""
    if all_zero:
        # identically zero statistic: the zero tail certifies both
        return HOLDS, HOLDS
    if slope <= SLOPE_BOUNDED_HOLDS:
        bounded = HOLDS
    elif slope >= SLOPE_BOUNDED_FAILS:
        bounded = FAILS
    else:
        bounded = INCONCLUSIVE
    if bounded == FAILS:
        compact = FAILS
    elif slope <= SLOPE_COMPACT_HOLDS:
        compact = HOLDS
    elif slope >= SLOPE_COMPACT_FAILS:
        compact = FAILS
    else:
        compact = INCONCLUSIVE
    return bounded, compact


def _merge(raw: str, corrected: str) -> str:
    return raw if raw == corrected else INCONCLUSIVE


def _upper_half(values: list) -> slice:
    return slice(len(values) // 2, None)


def phi(alpha: float, n: np.ndarray | float):
    """Regime scaling: 1 for alpha < 0, log N for alpha = 0, N^alpha above."""
    if alpha < 0.0:
        return np.ones_like(np.asarray(n, dtype=float))
    if alpha == 0.0:
        return np.log(np.asarray(n, dtype=float))
    return np.asarray(n, dtype=float) ** alpha


def _regime(alpha: float) -> str:
    if alpha < 0.0:
        return "alpha_neg"
    if alpha == 0.0:
        return "alpha_zero"
    return "alpha_pos"


def _check_grid(n_grid: list[int], n_len: int, headroom: int = 16) -> np.ndarray:
    grid = np.asarray(sorted(n_grid), dtype=int)
    if grid.size < 4:
        raise ValueError("grid too coarse: need at least 4 points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid points must be strictly increasing")
    if grid[0] < 1:
        raise ValueError("grid points must be >= 1")
    if grid[-1] * headroom > n_len:
        raise ValueError(
            f"max grid point {grid[-1]} too close to sequence length {n_len}; "
            f"need max * {headroom} <= length"
        )
    return grid


def criterion(
    eta: EtaSeq, alpha: float, beta: float, n_grid: list[int]
) -> CriterionReport:
    """Scan S_N = A_N * phi(N) over a dyadic grid and classify.

    In the alpha < 0 regime boundedness and compactness coincide, so the
    compact verdict simply mirrors the bounded one.
    """
    grid = _check_grid(n_grid, len(eta))
    a_vals = np.array([tail_sum(eta, beta, int(n)) for n in grid])
    p = phi(alpha, grid)
    s_vals = a_vals * p
    majorant = tail_majorant(eta, beta)

    half = _upper_half(list(grid))
    slope = _loglog_slope(grid[half].astype(float), s_vals[half])
    bounded_raw, compact_raw = _classify(slope, all_zero=not np.any(s_vals[half]))
    if math.isinf(majorant):
        # the full series diverges: every criterion fails outright
        bounded, compact = FAILS, FAILS
    else:
        s_corr = (a_vals + majorant) * p
        slope_corr = _loglog_slope(grid[half].astype(float), s_corr[half])
        bounded_c, compact_c = _classify(
            slope_corr, all_zero=not np.any(s_corr[half])
        )
        bounded = _merge(bounded_raw, bounded_c)
        compact = _merge(compact_raw, compact_c)
    regime = _regime(alpha)
    if regime == "alpha_neg":
        compact = bounded
    return CriterionReport(
        regime=regime,
        grid=tuple((int(n), float(a), float(s)) for n, a, s in zip(grid, a_vals, s_vals)),
        sup_s=float(np.max(s_vals)),
        slope=slope,
        verdict_bounded=bounded,
        verdict_compact=compact,
        tail_majorant=majorant,
        statistic="tail",
    )


def partial_sum_form(
    eta: EtaSeq, alpha: float, beta: float, n_grid: list[int]
) -> CriterionReport:
    """Equivalent partial-sum statistic for alpha > 0.

    S'_N = N^(-alpha) * sum_{n=1}^N n^(1+2 alpha - beta) |eta_n|^2; no
    truncation correction is needed since only stored entries enter.
    """
    if alpha <= 0.0:
        raise ValueError("partial_sum_form requires alpha > 0")
    grid = _check_grid(n_grid, len(eta) - 1, headroom=1)
    n_top = int(grid[-1])
    n = np.arange(1, n_top + 1, dtype=float)
    terms = n ** (1.0 + 2.0 * alpha - beta) * np.abs(eta.eta[1 : n_top + 1]) ** 2
    prefix = comp_cumsum(terms)
    t_vals = prefix[grid - 1]
    s_vals = t_vals * grid.astype(float) ** (-alpha)

    half = _upper_half(list(grid))
    slope = _loglog_slope(grid[half].astype(float), s_vals[half])
    bounded, compact = _classify(slope, all_zero=not np.any(s_vals[half]))
    return CriterionReport(
        regime="alpha_pos",
        grid=tuple((int(g), float(t), float(s)) for g, t, s in zip(grid, t_vals, s_vals)),
        sup_s=float(np.max(s_vals)),
        slope=slope,
        verdict_bounded=bounded,
        verdict_compact=compact,
        tail_majorant=0.0,
        statistic="partial_sum",
    )


class NonMonotoneEtaError(ValueError):
    """|eta| is not non-increasing; the decreasing-sequence shortcut
    does not apply."""


def decreasing_shortcut(
    eta: EtaSeq, alpha: float, beta: float, n_grid: list[int]
) -> CriterionReport:
    """Pointwise shortcut for decreasing |eta| and alpha > 0.

    For beta < alpha + 2 the statistic is |eta_N| * N^(1+(alpha-beta)/2);
    for beta >= alpha + 2 any bounded decreasing sequence qualifies, so
    the statistic degenerates to |eta_N| and boundedness always holds.
    """
    if alpha <= 0.0:
        raise ValueError("decreasing_shortcut requires alpha > 0")
    mags = np.abs(eta.eta)
    if np.any(mags[1:] > mags[:-1] * (1.0 + 1e-12)):
        raise NonMonotoneEtaError("|eta| must be non-increasing")
    grid = _check_grid(n_grid, len(eta) - 1, headroom=1)
    mag_grid = mags[grid]
    degenerate = beta >= alpha + 2.0
    if degenerate:
        s_vals = mag_grid.copy()
    else:
        s_vals = mag_grid * grid.astype(float) ** (1.0 + (alpha - beta) / 2.0)

    half = _upper_half(list(grid))
    slope = _loglog_slope(grid[half].astype(float), s_vals[half])
    bounded, compact = _classify(slope, all_zero=not np.any(s_vals[half]))
    if degenerate:
        bounded = HOLDS
        compact = HOLDS if slope <= SLOPE_COMPACT_HOLDS else compact
    return CriterionReport(
        regime="alpha_pos",
        grid=tuple(
            (int(g), float(m), float(s)) for g, m, s in zip(grid, mag_grid, s_vals)
        ),
        sup_s=float(np.max(s_vals)),
        slope=slope,
        verdict_bounded=bounded,
        verdict_compact=compact,
        tail_majorant=0.0,
        statistic="decreasing_shortcut",
    )


@dataclass(frozen=True)
class CarlesonReport:
    """Scan of mu([t,1)) / (1-t)^s over a grid t -> 1."""

    s: float
    grid: tuple[tuple[float, float], ...]  # (t, ratio)
    sup_ratio: float
    slope: float  # slope of log ratio against log(1-t)
    verdict: str

    def to_csv(self) -> str:
        lines = ["t,ratio"]
        for t, ratio in self.grid:
            lines.append(f"{t:.17g},{ratio:.17g}")
        return "\n".join(lines) + "\n"


def carleson_statistic(
    mu: MeasureSpec, s: float, t_grid: list[float] | None = None
) -> CarlesonReport:
    """Test the s-Carleson condition mu([t,1)) <= C (1-t)^s for a radial
    measure: the ratio must stay bounded as t -> 1.

    Default grid: t = 1 - 2^-j, j = 1 .. 14.  The verdict classifies the
    trend of the ratio in log(1-t): a ratio behaving like (1-t)^e is
    bounded iff e >= 0.
    """
    if s <= 0.0:
        raise ValueError("s must be positive")
    if t_grid is None:
        t_grid = [1.0 - 2.0**-j for j in range(1, 15)]
    ts = sorted(float(t) for t in t_grid)
    for t in ts:
        if not (0.0 <= t < 1.0):
            raise ValueError("grid points must lie in [0, 1)")
    ratios = np.array([mu.tail_mass(t) / (1.0 - t) ** s for t in ts])
    x = np.array([1.0 - t for t in ts])
    half = _upper_half(ts)
    slope = _loglog_slope(x[half][::-1], ratios[half][::-1])
    if slope >= -SLOPE_BOUNDED_HOLDS:
        verdict = HOLDS
    elif slope <= -SLOPE_BOUNDED_FAILS:
        verdict = FAILS
    else:
        verdict = INCONCLUSIVE
    return CarlesonReport(
        s=float(s),
        grid=tuple((t, float(r)) for t, r in zip(ts, ratios)),
        sup_ratio=float(np.max(ratios)),
        slope=slope,
        verdict=verdict,
    )
