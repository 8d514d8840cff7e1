"""Two-sided certificates: witnesses below, Schur bounds above.

Verdicts from slope classification are heuristics; certificates are not.
A lower bound comes from any explicit test function f: the ratio
||C f|| / ||f|| never exceeds the operator norm.  An upper bound for a
nonnegative kernel comes from the Schur row/column-sum test.  A third
tool checks the weighted-inequality transference principle that powers
the sufficiency direction of the positive-exponent criterion.

Run:  python3 demos/05_certificates.py
"""

import numpy as np

from rhalylab import (
    bennett_check,
    b_grid,
    classical_cesaro,
    default_truncation,
    dyadic_grid,
    explicit_eta,
    g_b_alpha,
    h_b,
    log_kernel,
    log_schur_weight,
    lower_bound,
    schur_certify,
    section,
    section_norm,
)


def main() -> None:
    # lower bounds: sweep the geometric family b -> 1 against the
    # classical weights at alpha = beta = 1
    print("lower-bound sweep, classical weights, alpha = beta = 1:")
    n_len = 2**18
    ces = classical_cesaro(n_len)
    best = 0.0
    for b in b_grid(12):
        n = min(default_truncation(b), n_len - 1)
        f = g_b_alpha(b, 1.0, n)
        cert = lower_bound(
            explicit_eta(ces.eta[: n + 1]), 1.0, 1.0, f
        )
        best = max(best, cert.value)
        print(f"  b = {b:.6f}: certified norm >= {cert.value:.6f}")
    sec = section_norm(section(ces, 1.0, 1.0, 2**12)).value
    print(f"  best witness {best:.6f} vs section norm {sec:.6f}")

    # the log family witnesses unboundedness on the Dirichlet space:
    # its certified values drift upward with b
    print("\nlog-family witnesses, classical weights, alpha = beta = 0:")
    for b in (1 - 2.0**-4, 1 - 2.0**-8, 1 - 2.0**-12):
        n = min(default_truncation(b), n_len - 1)
        cert = lower_bound(
            explicit_eta(ces.eta[: n + 1]), 0.0, 0.0, h_b(b, n)
        )
        print(f"  b = {b:.8f}: certified norm >= {cert.value:.4f}")
    print("  -> no finite norm can dominate the sweep: unbounded")

    # Schur upper bound for the logarithmic kernel
    print("\nSchur test for the kernel 1/(sqrt(jm) log(j+m+1)):")
    for n in (2**10, 2**12):
        p = log_schur_weight(np.arange(1, n + 1, dtype=float))
        cert = schur_certify(log_kernel, p, n)
        print(
            f"  n = {n}: c1 = {cert.parameters['c1']:.4f}, "
            f"c2 = {cert.parameters['c2']:.4f}, bound sqrt(c1 c2) = {cert.value:.4f}"
        )

    # transference principle on a concrete instantiation
    print("\nweighted-inequality transference check:")
    n = 2**16
    k = np.arange(1, n + 1, dtype=float)
    cert = bennett_check(
        u=1.0 / (k + 1.0) ** 2, v=np.ones(n), w=1.0 / k, n_grid=dyadic_grid(4, 16)
    )
    print(
        f"  hypothesis ratio {cert.parameters['hypothesis_ratio']:.4f}, "
        f"conclusion ratio {cert.value:.4f}, "
        f"passed = {bool(cert.parameters['passed'])}"
    )


if __name__ == "__main__":
    main()
