"""Boundedness criteria: one tail sum, three regimes.

For weights eta acting from D^2_alpha to D^2_beta the decisive quantity
is the tail sum A_N = sum_{n >= N} n^(1-beta) |eta_n|^2.  Boundedness is
equivalent to A_N = O(1), O(1/log N), or O(N^-alpha) according to
whether alpha is negative, zero, or positive; the little-oh versions
characterize compactness.  The scanner reports the scaled statistic
S_N = A_N * phi(N) over a dyadic grid and classifies its log-log slope.

Run:  python3 demos/03_criteria_regimes.py
"""

from rhalylab import classical_cesaro, criterion, dyadic_grid, power_log_family

GRID = dyadic_grid(4, 14)


def show(label, rep):
    print(f"{label}")
    print(
        f"  regime {rep.regime}, sup S = {rep.sup_s:.4f}, slope {rep.slope:+.4f}"
        f" -> bounded: {rep.verdict_bounded}, compact: {rep.verdict_compact}"
    )


def main() -> None:
    ces = classical_cesaro(2**20)

    # Dirichlet space to itself: S_N = A_N log N drifts upward -> fails.
    show("classical weights, alpha = beta = 0:", criterion(ces, 0.0, 0.0, GRID))

    # alpha = beta = 1: S_N = N A_N flattens near 1 -> bounded holds,
    # but no decay -> compactness fails.
    show("classical weights, alpha = beta = 1:", criterion(ces, 1.0, 1.0, GRID))

    # a half-power log damping rescues the Dirichlet case
    damped = power_log_family(1.0, 1.0, 2**20)
    show(
        "damped weights 1/((n+1) log(n+2)), alpha = beta = 0:",
        criterion(damped, 0.0, 0.0, GRID),
    )

    # in the negative regime boundedness and compactness coincide
    fast = power_log_family(2.0, 0.0, 2**20)
    show("weights (n+1)^-2, alpha = beta = -1:", criterion(fast, -1.0, -1.0, GRID))

    print("\nstatistic table for the alpha = beta = 1 classical case:")
    rep = criterion(ces, 1.0, 1.0, GRID)
    print(f"  {'N':>6}  {'A_N':>12}  {'S_N = N A_N':>12}")
    for n, a, s in rep.grid:
        print(f"  {n:>6}  {a:>12.6e}  {s:>12.6f}")


if __name__ == "__main__":
    main()
