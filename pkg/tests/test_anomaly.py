import mpmath
import numpy as np
import pytest

from topstring.cli import manufactured_g1
from topstring.geometry import (
    GridTooCoarseError,
    KahlerField,
    MissingLowerGenusError,
    anomaly_prefactor,
    anomaly_residual_g1,
    anomaly_rhs_g,
    anomaly_rhs_g1,
    covariant_derivative,
    kahler_field,
    sample_field,
    wirtinger,
)

import oracles


def cubic_field(origin, step, n, prec=128):
    return kahler_field(
        lambda t: -mpmath.log(8 * t.imag**3),
        lambda t: 3 / (4 * t.imag**2),
        lambda t: mpmath.mpc(6),
        origin, step, n, prec,
    )


# --- genus one ----------------------------------------------------------------------------


def test_rhs_g1_synthetic_point():
    # |C|^2 e^{2K} G^{-2} = 1, G = 1, chi = 48
    assert anomaly_rhs_g1(1, 1, 0, 1, 48) == -mpmath.mpf(1) / 2


def test_trivial_zero_residual():
    n = 7
    zero = np.full((n, n), mpmath.mpc(0), dtype=object)
    one = np.full((n, n), mpmath.mpf(1), dtype=object)
    data = KahlerField(zero.copy(), one, zero.copy(), mpmath.mpf("0.01"))
    F1 = np.full((n, n), mpmath.mpf(3), dtype=object)
    assert anomaly_residual_g1(data, F1, 24).max_residual == 0


def test_manufactured_solution_41x41():
    data, F1 = manufactured_g1(-200, mpmath.mpf("1e-4"), 41, 1, 128)
    res = anomaly_residual_g1(data, F1, -200, tolerance=1e-6, prec=128)
    assert res.max_residual < 1e-6
    assert res.truncation_estimate < 1e-6


def test_manufactured_solution_from_quadrature():
    # F_1 built from numeric quadrature of the right-hand side in y, no closed form
    chi, h, n, y0 = 30, mpmath.mpf("1e-3"), 41, mpmath.mpf(1)
    with mpmath.workprec(128):
        data = cubic_field(mpmath.mpc(0.2, y0), h, n)
        c = anomaly_rhs_g1(6, 6, -mpmath.log(8), mpmath.mpf(3) / 4, chi)  # value at y = 1, scales as 1/y^2
        ys = sorted({y0 + h * iy for iy in range(n)})
        table = oracles.manufactured_f1_quadrature(c, y0, ys)
        F1 = np.empty((n, n), dtype=object)
        for ix in range(n):
            for iy in range(n):
                F1[ix, iy] = table[ys[iy]]
    res = anomaly_residual_g1(data, F1, chi, prec=128)
    assert res.max_residual < 1e-6


def test_manufactured_rhs_matches_closed_form_constant():
    with mpmath.workprec(128):
        for chi in (-200, 0, 24, 30):
            expected = mpmath.mpf(1) / 2 - (mpmath.mpf(chi) / 24 - 1) * mpmath.mpf(3) / 4
            for y in (mpmath.mpf("0.5"), mpmath.mpf(2)):
                got = anomaly_rhs_g1(6, 6, -mpmath.log(8 * y**3), 3 / (4 * y**2), chi)
                assert abs(got * y**2 - expected) < mpmath.mpf(10) ** -30


def test_residual_converges_second_order():
    devs = []
    for k in range(4):
        h = mpmath.mpf("1e-2") / 2**k
        data, F1 = manufactured_g1(-200, h, 9, 1, 128)
        devs.append(anomaly_residual_g1(data, F1, -200, prec=128).max_residual)
    ratios = [devs[i] / devs[i + 1] for i in range(3)]
    for r in ratios:
        assert abs(r - 4) < 0.1, ratios


def test_wrong_chi_is_detected():
    data, F1 = manufactured_g1(-200, mpmath.mpf("1e-4"), 11, 1, 128)
    assert anomaly_residual_g1(data, F1, -176, prec=128).max_residual > 0.5


def test_coarse_grid_diagnostic():
    data, F1 = manufactured_g1(-200, mpmath.mpf("0.1"), 9, 1, 128)
    with pytest.raises(GridTooCoarseError) as info:
        anomaly_residual_g1(data, F1, -200, tolerance=1e-6, prec=128)
    assert info.value.estimate > 1e-6
    assert "refine" in str(info.value)


def test_shape_checks():
    data = cubic_field(1j, 0.01, 5)
    with pytest.raises(ValueError):
        anomaly_residual_g1(data, np.zeros((4, 4), dtype=object), 0)
    with pytest.raises(ValueError):
        KahlerField(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)), 0.1)


# --- derivatives -----------------------------------------------------------------------------


def test_wirtinger_of_holomorphic_field():
    with mpmath.workprec(128):
        h = mpmath.mpf("1e-4")
        f = sample_field(lambda t: t**3, mpmath.mpc(0.3, 1), h, 5, 128)
        d = wirtinger(f, h)
        dbar = wirtinger(f, h, conjugate=True)
        t = mpmath.mpc(0.3, 1) + h * mpmath.mpc(2, 2)
        assert abs(d[2, 2] - 3 * t**2) < 1e-7
        assert abs(dbar[2, 2]) < 1e-7


def test_covariant_derivative_cubic_model():
    # dK = 3i/(2y), d log G = i/y for e^{-K} = 8y^3, G = 3/(4y^2)
    with mpmath.workprec(128):
        h = mpmath.mpf("1e-4")
        data = cubic_field(mpmath.mpc(0, 1), h, 5)
        one = np.full((5, 5), mpmath.mpc(1), dtype=object)
        y = 1 + 2 * h
        for w, r in ((1, 0), (-2, 0), (0, 1), (-2, 1)):
            D = covariant_derivative(one, data, w, r)
            expected = w * 3j / (2 * y) - r * 1j / y
            assert abs(D[2, 2] - expected) < 1e-7


def test_prefactor_cubic_model():
    # Cbar e^{2K} G^{-2} = 6 / (64 y^6) * (16 y^4 / 9) = 1 / (6 y^2)
    with mpmath.workprec(128):
        data = cubic_field(mpmath.mpc(0, 2), mpmath.mpf("0.1"), 3)
        P = anomaly_prefactor(data)
        for iy in range(3):
            y = 2 + mpmath.mpf("0.1") * iy
            assert abs(P[1, iy] - 1 / (6 * y**2)) < mpmath.mpf(10) ** -30


# --- higher genus -------------------------------------------------------------------------------


def test_rhs_g_examples():
    assert anomaly_rhs_g(2, {1: (0, 3, 2)}, prefactor=1) == 5.5
    assert anomaly_rhs_g(3, {1: (0, 1, 0), 2: (0, 1, 0)}, prefactor=1) == 1
    assert anomaly_rhs_g(2, {1: (0, 0, 0)}, prefactor=1) == 0


def test_rhs_g_on_grid():
    data = cubic_field(mpmath.mpc(0, 1), mpmath.mpf("0.1"), 3)
    ones = np.full((3, 3), mpmath.mpc(1), dtype=object)
    out = anomaly_rhs_g(2, {1: (ones, ones, ones)}, data=data)
    P = anomaly_prefactor(data)
    for idx in np.ndindex(out.shape):
        assert abs(out[idx] - P[idx]) < mpmath.mpf(10) ** -30


def test_rhs_g_missing_entries():
    with pytest.raises(MissingLowerGenusError) as info:
        anomaly_rhs_g(3, {2: (0, 1, 0)}, prefactor=1)
    assert info.value.r == 1
    assert "r = 1" in str(info.value)
    with pytest.raises(MissingLowerGenusError):
        anomaly_rhs_g(2, {1: (0, 1)}, prefactor=1)
    with pytest.raises(ValueError):
        anomaly_rhs_g(1, {}, prefactor=1)
    with pytest.raises(ValueError):
        anomaly_rhs_g(2, {1: (0, 1, 1)})
