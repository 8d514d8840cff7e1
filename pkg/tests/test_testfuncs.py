import math

import numpy as np
import pytest

from rhalylab.cesaro import section
from rhalylab.coeffspace import CoeffSeq, norm_sq
from rhalylab.etagen import classical_cesaro, explicit_eta
from rhalylab.normest import section_norm
from rhalylab.testfuncs import (
    Certificate,
    b_grid,
    bennett_check,
    default_truncation,
    g_b_alpha,
    h_b,
    log_kernel,
    log_schur_weight,
    lower_bound,
    schur_certify,
)


def test_default_truncation():
    assert default_truncation(0.75) == 64
    b = 1.0 - 2.0**-10
    assert default_truncation(b) == 16 * 2**10


def test_b_grid_inside_domain():
    grid = b_grid()
    assert all(0.5 < b < 1.0 for b in grid)
    assert grid[0] == 0.75
    assert len(grid) == 13


def test_h_b_norm_closed_form():
    # ||h_b||^2 at alpha = 0 equals fsum(b^2k / k) / log(1/(1-b)); as
    # b -> 1 this tends to 1 like 1 - log 2 / log(1/(1-b))
    for j in (6, 10, 14):
        b = 1.0 - 2.0**-j
        n = default_truncation(b)
        f = h_b(b, n)
        val = norm_sq(f, 0.0)
        k = np.arange(1, n + 1, dtype=float)
        exact = math.fsum((b ** (2 * k) / k)[::-1]) / math.log(1.0 / (1.0 - b))
        assert val == pytest.approx(exact, rel=1e-12)
        # -log(1-b^2) = log(1/(1-b)) - log(1+b), so the ratio approaches
        # 1 - log 2 / log(1/(1-b)) from below as the truncation tail vanishes
        model = 1.0 - math.log(1.0 + b) / math.log(1.0 / (1.0 - b))
        assert val == pytest.approx(model, rel=1e-3)


def test_h_b_norm_uniformly_bounded():
    vals = [norm_sq(h_b(b, default_truncation(b)), 0.0) for b in b_grid()]
    assert max(vals) <= 1.0
    assert min(vals) >= 0.5
    assert max(vals) / min(vals) <= 2.0


def test_h_b_validation():
    with pytest.raises(ValueError):
        h_b(0.5, 100)
    with pytest.raises(ValueError):
        h_b(1.0, 100)
    with pytest.raises(ValueError):
        h_b(0.9, 0)


def test_g_b_alpha_one_closed_form():
    # alpha = 1: coefficients are (1-b)^(1/2) b^k, so
    # ||g||^2 = (1-b) b^2 / (1-b^2) up to the dropped tail
    for j in (6, 10):
        b = 1.0 - 2.0**-j
        n = default_truncation(b)
        val = norm_sq(g_b_alpha(b, 1.0, n), 1.0)
        exact = (1.0 - b) * b * b / (1.0 - b * b)
        assert val == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_g_norm_band(alpha):
    vals = [
        norm_sq(g_b_alpha(b, alpha, default_truncation(b)), alpha) for b in b_grid()
    ]
    assert max(vals) / min(vals) <= 3.0


def test_g_validation():
    with pytest.raises(ValueError):
        g_b_alpha(0.9, 0.0, 10)
    with pytest.raises(ValueError):
        g_b_alpha(0.4, 1.0, 10)


def test_lower_bound_never_exceeds_section_norm():
    eta = classical_cesaro(128)
    alpha = beta = 1.0
    sec = section_norm(section(eta, alpha, beta, 128)).value
    for b in (0.75, 0.875):
        f = g_b_alpha(b, alpha, default_truncation(b))
        pad = np.zeros(129, dtype=complex)
        pad[: min(129, len(f.coeffs))] = f.coeffs[:129]
        cert = lower_bound(eta, alpha, beta, CoeffSeq(pad))
        assert cert.kind == "lower_bound"
        assert cert.value <= sec * (1.0 + 1e-9)
        assert cert.witness is not None


def test_lower_bound_rejects_zero_function():
    eta = classical_cesaro(10)
    with pytest.raises(ValueError):
        lower_bound(eta, 0.0, 0.0, CoeffSeq(np.zeros(5)))


def test_lower_bound_identity_on_diagonal_eta():
    # eta supported only at 0: C f = a_0 eta_0 constant
    eta = explicit_eta([2.0, 0.0, 0.0])
    cert = lower_bound(eta, 0.0, 0.0, CoeffSeq([1.0]))
    assert cert.value == pytest.approx(2.0, rel=1e-14)


def test_schur_identity_kernel():
    # diagonal kernel delta_{jm}: row and column sums equal p_j, value 1
    def entry(j, m):
        return (j == m).astype(float)

    cert = schur_certify(entry, np.linspace(1.0, 2.0, 50), 50)
    assert cert.kind == "schur_upper"
    assert cert.value == pytest.approx(1.0, rel=1e-14)
    assert cert.parameters["c1"] == pytest.approx(1.0)


def test_schur_hilbert_kernel():
    # Hilbert kernel 1/(j+m) with weight j^(-1/2): constants near pi
    def entry(j, m):
        return 1.0 / (j + m)

    n = 2048
    p = np.arange(1, n + 1, dtype=float) ** -0.5
    cert = schur_certify(entry, p, n)
    assert cert.value <= math.pi * 1.01
    assert cert.value >= 2.0


def test_schur_log_kernel_stabilizes():
    vals = []
    for n in (2**10, 2**11, 2**12):
        p = log_schur_weight(np.arange(1, n + 1, dtype=float))
        vals.append(schur_certify(log_kernel, p, n).value)
    assert abs(vals[2] - vals[1]) / vals[1] <= 0.05
    assert abs(vals[1] - vals[0]) / vals[0] <= 0.08


def test_schur_scaling_invariance():
    # multiplying the weight vector by a constant leaves c1, c2 unchanged
    def entry(j, m):
        return 1.0 / (j + m)

    n = 128
    p = np.arange(1, n + 1, dtype=float) ** -0.5
    a = schur_certify(entry, p, n)
    b = schur_certify(entry, 7.0 * p, n)
    assert a.value == pytest.approx(b.value, rel=1e-12)
    assert a.parameters["c1"] == pytest.approx(b.parameters["c1"], rel=1e-12)


def test_schur_validation():
    def entry(j, m):
        return j - m  # has negative entries

    with pytest.raises(ValueError):
        schur_certify(entry, np.ones(8), 8)
    with pytest.raises(ValueError):
        schur_certify(lambda j, m: j * 0 + 1.0, np.ones(7), 8)
    with pytest.raises(ValueError):
        schur_certify(lambda j, m: j * 0 + 1.0, np.zeros(8), 8)


def test_bennett_unit_weight_equality():
    # w = 1 makes the hypothesis and conclusion ratios identical
    n = 2**12
    k = np.arange(1, n + 1, dtype=float)
    u = k**-3.0
    v = k**0.5
    w = np.ones(n)
    cert = bennett_check(u, v, w, [2**j for j in range(4, 13)])
    assert cert.kind == "bennett"
    assert cert.parameters["passed"] == 1.0
    assert cert.value == pytest.approx(cert.parameters["hypothesis_ratio"], rel=1e-12)
    assert cert.parameters["hypothesis_slope"] == pytest.approx(
        cert.parameters["conclusion_slope"], abs=1e-12
    )


def test_bennett_criterion_instantiation():
    # u_k = k^(1-beta) |eta_k|^2, v_k = k^(alpha-1), w_k = |a_k| / k^(alpha-1)
    # with classical weights at alpha = beta = 1 and a_k = 1/k
    n = 2**14
    k = np.arange(1, n + 1, dtype=float)
    u = 1.0 / (k + 1.0) ** 2
    v = np.ones(n)
    w = 1.0 / k
    cert = bennett_check(u, v, w, [2**j for j in range(4, 15)])
    assert cert.parameters["passed"] == 1.0
    assert cert.parameters["conclusion_slope"] <= 0.05


def test_bennett_transference_random_property():
    rng = np.random.default_rng(123)
    grid = [2**j for j in range(4, 12)]
    n = grid[-1]
    k = np.arange(1, n + 1, dtype=float)
    for _ in range(10):
        p = rng.uniform(-2.0, 0.5)
        u = k ** rng.uniform(-3.0, -1.5)
        v = k ** rng.uniform(-0.5, 0.5)
        w = k**p * (1.0 + rng.uniform(0.0, 1.0))
        cert = bennett_check(u, v, w, grid)
        # the transference principle itself must never be falsified
        assert cert.parameters["passed"] == 1.0


def test_bennett_validation():
    n = 32
    ones = np.ones(n)
    with pytest.raises(ValueError):
        bennett_check(ones, ones, ones[:-1], [4, 8, 16, 32])
    with pytest.raises(ValueError):
        bennett_check(ones, ones, ones, [4, 8, 16])
    with pytest.raises(ValueError):
        bennett_check(ones, ones, ones, [4, 8, 16, 64])
    with pytest.raises(ValueError):
        bennett_check(-ones, ones, ones, [4, 8, 16, 32])


def test_certificate_serialization():
    cert = Certificate(kind="lower_bound", value=1.5, parameters={"alpha": 1.0})
    doc = cert.to_json_dict()
    assert doc == {"kind": "lower_bound", "value": 1.5, "parameters": {"alpha": 1.0}}
