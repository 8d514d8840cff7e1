"""Finite-section norm estimation and the compactness probe.

Between two weighted spaces the operator reduces to a lower-triangular
matrix on l2.  Its leading (N+1) x (N+1) block has a largest singular
value that increases to the operator norm as N grows; if the operator is
compact, the norm of the block with the first rows deleted decays to 0.

This script shows both effects:
  * classical weights at alpha = beta = 1: section norms converge to a
    finite limit, but residuals do not decay (bounded, not compact);
  * point-mass moment weights from D^2_1 to D^2_0: residuals collapse
    geometrically (compact).

Run:  python3 demos/02_section_norms.py
"""

from rhalylab import (
    MeasureSpec,
    classical_cesaro,
    measure_moments,
    residual_norm,
    section,
    section_norm,
)


def main() -> None:
    eta = classical_cesaro(2**13)
    print("classical weights, alpha = beta = 1: section norms")
    print(f"  {'N':>6}  {'sigma_max':>12}  iterations")
    for k in range(4, 14):
        est = section_norm(section(eta, 1.0, 1.0, 2**k))
        print(f"  {2**k:>6}  {est.value:>12.8f}  {est.iterations}")
    print("  -> increasing and saturating: the operator is bounded")

    print("\nclassical weights: residual norms (rows 0..N_cut deleted)")
    for k in (5, 7, 9):
        est = residual_norm(eta, 1.0, 1.0, 2**k, 2**13)
        print(f"  N_cut = {2**k:>4}: {est.value:.6f}")
    print("  -> no decay: bounded but NOT compact")

    mu = MeasureSpec(atoms=((0.9, 1.0),))
    eta2 = measure_moments(mu, 2**13)
    print("\npoint mass at t = 0.9, alpha = 1, beta = 0: residual norms")
    for k in (5, 6, 7, 8):
        est = residual_norm(eta2, 1.0, 0.0, 2**k, 2**13)
        print(f"  N_cut = {2**k:>4}: {est.value:.3e}")
    print("  -> geometric collapse: the operator is compact")


if __name__ == "__main__":
    main()
