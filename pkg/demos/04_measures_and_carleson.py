"""Moment weights of radial measures and the Carleson ratio test.

A positive Borel measure mu on [0,1) defines weights eta_n = integral of
t^n d mu.  For alpha > 0 and beta < alpha + 2 the induced operator is
bounded exactly when mu is an s-Carleson measure with s = 1+(alpha-beta)/2,
i.e. mu([t,1)) <= C (1-t)^s.  With densities (1-t)^gamma the condition
reads gamma + 1 >= s, so the threshold at (alpha, beta) = (1, 0) sits at
gamma = 0.5.  This script shows both sides of the threshold and checks
that the measure-side ratio test and the moment-side criterion agree.

Run:  python3 demos/04_measures_and_carleson.py
"""

from rhalylab import (
    MeasureSpec,
    carleson_statistic,
    decreasing_shortcut,
    dyadic_grid,
    measure_moments,
)

ALPHA, BETA = 1.0, 0.0
S = 1.0 + (ALPHA - BETA) / 2.0  # = 1.5


def main() -> None:
    print(f"source alpha = {ALPHA}, target beta = {BETA} -> Carleson exponent s = {S}")
    for gamma in (0.6, 0.5, 0.4):
        mu = MeasureSpec(density=(gamma, 1.0))
        car = carleson_statistic(mu, S)
        eta = measure_moments(mu, 2**18)
        short = decreasing_shortcut(eta, ALPHA, BETA, dyadic_grid(4, 14))
        print(f"\ndensity (1-t)^{gamma}:")
        print(
            f"  measure side: sup ratio {car.sup_ratio:.4f}, slope {car.slope:+.4f}"
            f" -> {car.verdict}"
        )
        print(
            f"  moment side:  sup stat  {short.sup_s:.4f}, slope {short.slope:+.4f}"
            f" -> {short.verdict_bounded}"
        )

    # an atom close to 1 is never s-Carleson once the grid passes it
    mu = MeasureSpec(atoms=((0.9999, 1.0),))
    car = carleson_statistic(mu, S)
    print(f"\npoint mass at t = 0.9999: ratio test -> {car.verdict}")
    print("  (mass sitting at the boundary violates every Carleson bound)")


if __name__ == "__main__":
    main()
