import math

import pytest
from hypothesis import given, settings, strategies as st

from topstring.matrix_model import (
    NonConfiningError,
    PotentialSpec,
    angular_constant,
    mm_eigen_log_z,
    mm_eigen_z,
    mm_gaussian_exact,
    mm_thooft_fit,
)

import oracles

GAUSS = PotentialSpec.gaussian()


def test_gaussian_closed_form_examples():
    assert mm_gaussian_exact(1, 1) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
    assert mm_gaussian_exact(2, 1) == pytest.approx(2 * math.pi**2, rel=1e-15)
    assert mm_gaussian_exact(2, 4) == pytest.approx(32 * math.pi**2, rel=1e-15)


def test_angular_constant():
    assert angular_constant(1) == 1
    assert angular_constant(2) == pytest.approx(math.pi / 2)
    assert angular_constant(3) == pytest.approx(math.pi**3 / 12)


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_quadrature_matches_gaussian(N, lam):
    z = mm_eigen_z(GAUSS, N, lam)
    assert abs(z / mm_gaussian_exact(N, lam) - 1) < 1e-10


def test_gaussian_n4():
    assert abs(mm_eigen_z(GAUSS, 4, 1.0) / mm_gaussian_exact(4, 1.0) - 1) < 1e-10


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("coeffs", [(0, 0, 0.5, 0, 0.25), (0, 0.3, 0.5, -0.2, 0.4), (1, 0, -1, 0, 0.5)])
def test_heine_oracle(N, coeffs):
    # Hankel determinant of one-dimensional moments, no N-dimensional quadrature
    W = PotentialSpec(coeffs)
    ref = oracles.heine_z(coeffs, N, 0.7)
    assert abs(mm_eigen_z(W, N, 0.7) / ref - 1) < 1e-10


def test_quartic_monte_carlo():
    W = PotentialSpec.quartic(1.0)
    est, se = oracles.monte_carlo_quartic_n2(1.0, 1.0, 400_000, seed=20261016)
    z = mm_eigen_z(W, 2, 1.0)
    assert abs(z - est) < 3 * se


@given(st.floats(0.01, 3.0), st.floats(0.01, 3.0))
@settings(max_examples=10, deadline=None)
def test_monotone_in_quartic_coupling(g_small, extra):
    a = mm_eigen_z(PotentialSpec.quartic(g_small), 2, 1.0)
    b = mm_eigen_z(PotentialSpec.quartic(g_small + extra), 2, 1.0)
    assert b < a


@pytest.mark.parametrize("N", [1, 2, 3])
def test_gaussian_scaling(N):
    # x -> sqrt(lambda) x: Z(lambda) = lambda^{N^2/2} Z(1)
    for lam in (0.25, 3.0):
        assert mm_eigen_z(GAUSS, N, lam) / mm_eigen_z(GAUSS, N, 1.0) == pytest.approx(lam ** (N * N / 2), rel=1e-10)


def test_log_z_large_values():
    # log space stays finite where Z itself is large
    v = mm_eigen_log_z(GAUSS, 3, 50.0)
    assert v == pytest.approx(math.log(mm_gaussian_exact(3, 50.0)), rel=1e-12)


def test_errors():
    with pytest.raises(NonConfiningError):
        mm_eigen_z(PotentialSpec((0, 0, 1, 1)), 2, 1.0)
    with pytest.raises(ValueError):
        PotentialSpec((0, 1))
    with pytest.raises(ValueError):
        PotentialSpec((0, 0, -1))
    with pytest.raises(ValueError):
        mm_eigen_z(GAUSS, 5, 1.0)
    with pytest.raises(ValueError):
        mm_eigen_z(GAUSS, 2, -1.0)
    with pytest.raises(ValueError):
        mm_gaussian_exact(0, 1.0)


# --- 't Hooft fit --------------------------------------------------------------------------


def test_fit_gaussian_reproduces_exact():
    t = 1.5
    family = [(N, t / N) for N in (1, 2, 3)]
    fit = mm_thooft_fit(GAUSS, family, gmax=2)
    for N, lam in family:
        assert abs(fit.evaluate(lam) + math.log(mm_gaussian_exact(N, lam))) < 1e-8


def test_fit_with_supplied_values():
    family = [(N, 2.0 / N) for N in (2, 3, 4)]
    vals = [-math.log(mm_gaussian_exact(N, lam)) for N, lam in family]
    fit = mm_thooft_fit(GAUSS, family, gmax=2, values=vals)
    assert fit.residual < 1e-10
    assert fit.values == tuple(vals)


def test_fit_underdetermined():
    with pytest.raises(ValueError):
        mm_thooft_fit(GAUSS, [(1, 1.0), (2, 0.5)], gmax=2)
    with pytest.raises(ValueError):
        mm_thooft_fit(GAUSS, [(1, 1.0), (2, 0.5)], gmax=0)
    with pytest.raises(ValueError):
        mm_thooft_fit(GAUSS, [(1, 1.0), (2, 1.0), (3, 1.0)], gmax=1)


def test_fit_quartic_residual_decreases():
    W = PotentialSpec.quartic(1.0)
    family = [(N, 1.0 / N) for N in (2, 3, 4)]
    vals = [-mm_eigen_log_z(W, N, lam) for N, lam in family]
    r0 = mm_thooft_fit(W, family, 0, vals).residual
    r1 = mm_thooft_fit(W, family, 1, vals).residual
    assert r1 < r0
