"""Averaging operators on coefficient sequences: first steps.

The operator studied here maps a coefficient sequence (a_n) to
b_n = eta_n * (a_0 + ... + a_n).  The classical choice eta_n = 1/(n+1)
is the running average.  This script applies a few operators to simple
inputs and measures the results in the weighted coefficient norms
||f||^2 = |a_0|^2 + sum n^(1-alpha) |a_n|^2.

Run:  python3 demos/01_operator_basics.py
"""

import numpy as np

from rhalylab import (
    CoeffSeq,
    apply,
    classical_cesaro,
    f_eta,
    measure_moments,
    MeasureSpec,
    monomial,
    norm_sq,
)


def main() -> None:
    n = 15
    ces = classical_cesaro(n)
    print("classical averaging weights eta_n = 1/(n+1):")
    print(" ", np.round(ces.eta.real, 4))

    # the running average of the all-ones sequence is again all ones
    ones = CoeffSeq(np.ones(n + 1))
    print("\napply to all-ones (fixed point):")
    print(" ", np.round(apply(ces, ones).coeffs.real, 12))

    # the image of the constant 1: coefficients are the eta weights
    print("\nimage of the constant function (its coefficients are eta):")
    print(" ", np.round(f_eta(ces).coeffs.real, 4))

    # a single monomial z^5 spreads into a tail eta_5, eta_6, ...
    print("\napply to the monomial z^5:")
    print(" ", np.round(apply(ces, monomial(5)).coeffs.real, 4))

    # weights can come from moments of a radial measure: a point mass at
    # t = 0.8 gives the geometric weights 0.8^n
    mu = MeasureSpec(atoms=((0.8, 1.0),))
    eta = measure_moments(mu, n)
    print("\nmoment weights of a point mass at t = 0.8:")
    print(" ", np.round(eta.eta.real, 4))

    # norms of one output in different spaces: smaller alpha puts more
    # weight on the tail, so the norm grows as alpha decreases
    out = apply(ces, monomial(5))
    print("\n||C z^5|| in different spaces:")
    for alpha in (2.0, 1.0, 0.0, -1.0):
        print(f"  alpha = {alpha:4.1f}:  {norm_sq(out, alpha) ** 0.5:.6f}")


if __name__ == "__main__":
    main()
