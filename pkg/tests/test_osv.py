import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from topstring.geometry import OSVCharges, OSVDivergenceError, attractor_periods, osv_assemble, osv_log_assemble


def test_examples():
    ch = OSVCharges((1,), (0.5,))
    assert osv_assemble(lambda X: 0, ch) == 1
    assert abs(osv_assemble(lambda X: 1j * mpmath.pi, ch) - 1) < mpmath.mpf(10) ** -60


def test_quadratic_prepotential():
    # F = -X1^2 / X0 at X = (1, 1 + 2i): F = -(1 + 2i)^2 = 3 - 4i, so |e^{-F}|^2 = e^{-6}
    ch = OSVCharges((1, 1), (0, 2))
    with mpmath.workprec(256):
        val = osv_assemble(lambda X: -X[1] ** 2 / X[0], ch, 256)
        assert abs(val - mpmath.exp(-6)) < mpmath.mpf(10) ** -70


def test_attractor_periods():
    X = attractor_periods(OSVCharges((2, -1), (0.5, 3)))
    assert X == [mpmath.mpc(2, 0.5), mpmath.mpc(-1, 3)]


def test_log_space_avoids_overflow():
    ch = OSVCharges((1,), (0,))
    big = mpmath.mpf(10) ** 6
    log_val = osv_log_assemble(lambda X: -big, ch)
    assert log_val == 2 * big
    val = osv_assemble(lambda X: -big, ch)
    assert mpmath.isfinite(val) and mpmath.log(val) == 2 * big


@given(st.floats(-50, 50), st.floats(-50, 50))
@settings(max_examples=50)
def test_depends_only_on_real_part(a, b):
    ch = OSVCharges((1,), (1,))
    with mpmath.workprec(128):
        v = osv_assemble(lambda X: mpmath.mpc(a, b), ch, 128)
        assert abs(v / mpmath.exp(-2 * mpmath.mpf(a)) - 1) < mpmath.mpf(10) ** -30


def test_divergence_diagnostics():
    ch = OSVCharges((0, 1), (0, 1))
    with pytest.raises(OSVDivergenceError):
        osv_assemble(lambda X: X[1] ** 2 / X[0], ch)
    with pytest.raises(OSVDivergenceError):
        osv_assemble(lambda X: mpmath.inf, ch)
    with pytest.raises(OSVDivergenceError):
        osv_assemble(lambda X: mpmath.nan, ch)


def test_charge_validation():
    with pytest.raises(ValueError):
        OSVCharges((1, 2), (1,))
    with pytest.raises(ValueError):
        OSVCharges((), ())
    with pytest.raises(ValueError):
        OSVCharges((0.5,), (1,))
