from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from topstring.exact import sigma1
from topstring.qseries import dedekind_eta
from topstring.torus import (
    ModuliPoint,
    anomaly_convergence,
    hnf_count,
    hnf_matrices,
    torus_anomaly_check,
    torus_f1,
    torus_instanton_coeffs,
)

import oracles


def test_f1_value_at_i():
    v = torus_f1(ModuliPoint(1j, 1j), 60, 200)
    assert mpmath.nstr(v, 15) == "1.05468828099567"


def test_f1_closed_form_at_i():
    # F_1(i, i) = -2 log |eta(i)|^2 with eta(i) = Gamma(1/4) / (2 pi^{3/4})
    with mpmath.workprec(200):
        eta = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
        assert abs(torus_f1(ModuliPoint(1j, 1j), 100, 200) + 4 * mpmath.log(eta)) < mpmath.mpf(10) ** -50


@pytest.mark.parametrize("t", [0.3 + 0.9j, 1j, -0.4 + 1.5j])
def test_f1_modular_invariance(t):
    with mpmath.workprec(200):
        t = mpmath.mpc(t)
        a = torus_f1(ModuliPoint(t, 1j), 200, 200)
        b = torus_f1(ModuliPoint(-1 / t, 1j), 200, 200)
        c = torus_f1(ModuliPoint(t + 1, 1j), 200, 200)
        assert abs(a - b) < mpmath.mpf(10) ** -50
        assert abs(a - c) < mpmath.mpf(10) ** -50


def test_moduli_point_domain():
    with pytest.raises(ValueError):
        ModuliPoint(-1j, 1j)
    with pytest.raises(ValueError):
        ModuliPoint(1j, 0.5)


@pytest.mark.parametrize("t", [1j, 2j, 0.5 + 1j])
def test_anomaly_laplacian_convention(t):
    rep = torus_anomaly_check(ModuliPoint(t, 1j), step=1e-5)
    assert rep.convention_tag == "anomaly:laplacian"
    assert rep.passed, rep.rel_dev
    assert rep.details["tau"].passed


def test_anomaly_wirtinger_convention():
    rep = torus_anomaly_check(ModuliPoint(1j, 1j), step=1e-5, convention="wirtinger")
    assert rep.convention_tag == "anomaly:wirtinger"
    assert abs(rep.rhs - mpmath.mpf(1) / 8) < mpmath.mpf(10) ** -30
    assert rep.passed


def test_anomaly_convergence_second_order():
    devs, ratios = anomaly_convergence(ModuliPoint(1j, 1j), step=1e-3, halvings=3)
    for r in ratios:
        assert abs(r - 4) < 0.05


def test_anomaly_step_rejected():
    with pytest.raises(ValueError):
        torus_anomaly_check(ModuliPoint(1j, 1j), step=2.0)
    with pytest.raises(ValueError):
        torus_anomaly_check(ModuliPoint(1j, 1j), step=1e-40, prec=128)


def test_instanton_coefficients():
    c = torus_instanton_coeffs(20)
    assert c[0] == Fraction(1, 24)
    assert c[1:] == [-sigma1(n) for n in range(1, 21)]


def test_instanton_coefficients_divisor_oracle():
    c = torus_instanton_coeffs(30)
    ref = oracles.divisor_sum_expansion(30)
    ref[0] += Fraction(1, 24)
    assert c == ref


def test_instanton_matches_eta_log_derivative():
    # (1/2 pi i) d/dtau log eta = 1/24 - sum sigma1(n) q^n, evaluated numerically
    with mpmath.workprec(200):
        tau = mpmath.mpc(0.1, 1.1)
        h = mpmath.mpf(10) ** -15
        f = lambda z: mpmath.log(dedekind_eta(z, 120, 200))
        d = (f(tau + h) - f(tau - h)) / (2 * h)
        q = mpmath.exp(2j * mpmath.pi * tau)
        series = sum(mpmath.mpf(c.numerator) / c.denominator * q**n for n, c in enumerate(torus_instanton_coeffs(60)))
        assert abs(d / (2j * mpmath.pi) - series) < mpmath.mpf(10) ** -25


@given(st.integers(1, 50))
@settings(max_examples=50)
def test_hnf_count_is_sigma1(n):
    assert hnf_count(n) == sigma1(n)


def test_hnf_enumeration():
    assert list(hnf_matrices(2)) == [(1, 0, 2), (1, 1, 2), (2, 0, 1)]
    assert hnf_count(4) == 7
    assert hnf_count(12) == 28
    with pytest.raises(ValueError):
        hnf_count(0)
