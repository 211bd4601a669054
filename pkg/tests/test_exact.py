import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoc7.errors import DomainError, QuadratureError, SeriesUnreliable
from hoc7.exact import (_cosine_moments, damping_terms, fourier_coefficients, fourier_eval, fourier_psi,
                        fourier_series, shock_exact, two_mode_exact)
from hoc7.problems import get_problem


def ex1(nu, l_max=200):
    p = get_problem("ex1")
    return fourier_coefficients(p.initial(nu), nu, l_max, antiderivative=p.antiderivative(nu))


@pytest.fixture(scope="module")
def ex1_nu2():
    return ex1(2.0)


def test_zero_data():
    sol = fourier_coefficients(lambda x: np.zeros_like(x), 1.0, 50)
    assert sol.beta0 == pytest.approx(1.0, abs=1e-14)
    assert np.max(np.abs(sol.betas)) <= 1e-12
    assert sol.complete


def test_coefficients_against_dense_trapezoid(ex1_nu2):
    # independent oracle: composite trapezoid with 2^16 panels on the closed-form integrand
    x = np.linspace(0, 1, 2**16 + 1)
    g = np.exp(-(1 - np.cos(np.pi * x)) / (2.0 * np.pi) - ex1_nu2.log_shift)
    w = np.full(x.size, 1.0 / 2**16)
    w[0] = w[-1] = 0.5 / 2**16
    assert ex1_nu2.beta0 == pytest.approx(w @ g, abs=1e-10)
    for l in range(1, 6):
        assert ex1_nu2.betas[l - 1] == pytest.approx(2 * w @ (g * np.cos(l * np.pi * x)), abs=1e-10)


def test_coefficient_invariants(ex1_nu2):
    assert ex1_nu2.beta0 > 0
    assert np.all(np.abs(ex1_nu2.betas) <= 2 * ex1_nu2.beta0)


def test_numerical_antiderivative_agrees():
    p = get_problem("ex1")
    a = fourier_coefficients(p.initial(0.5), 0.5, 40, antiderivative=p.antiderivative(0.5))
    b = fourier_coefficients(p.initial(0.5), 0.5, 40)
    np.testing.assert_allclose(a.betas, b.betas, atol=1e-11)


def test_published_exact_values(ex1_nu2):
    assert fourier_eval(ex1_nu2, 0.5, 0.1) == pytest.approx(0.371577, abs=5e-7)
    assert fourier_eval(ex1(0.2), 0.25, 1.0) == pytest.approx(0.16256, abs=5e-6)
    assert fourier_eval(ex1(0.01), 0.25, 5.0) == pytest.approx(0.046963, abs=5e-7)


def test_boundary_values_vanish(ex1_nu2):
    np.testing.assert_array_equal(fourier_eval(ex1_nu2, np.array([0.0, 1.0]), 0.05), [0.0, 0.0])


def test_terms_used(ex1_nu2):
    assert fourier_series(ex1_nu2, [0.5], 0.1).terms_used <= 30
    assert damping_terms(2.0, 0.1) <= 30
    assert damping_terms(1.0, 0.0) == 10000


@pytest.mark.parametrize("pid,nu", [("ex1", 0.2), ("ex1", 2.0), ("ex2", 0.5)])
def test_series_at_time_zero_reproduces_data(pid, nu):
    p = get_problem(pid)
    sol = fourier_coefficients(p.initial(nu), nu, 2000, antiderivative=p.antiderivative(nu))
    assert sol.complete
    x = np.linspace(0, 1, 81)[1:-1]
    np.testing.assert_allclose(fourier_eval(sol, x, 0.0), p.w0(x, nu), atol=1e-3)


def test_small_viscosity_flagged_unreliable():
    sol = ex1(0.001, l_max=damping_terms(0.001, 10.0))
    with pytest.raises(SeriesUnreliable) as info:
        fourier_eval(sol, np.linspace(0, 1, 81), 10.0)
    assert info.value.reason in ("cancellation", "l_max")
    ev = fourier_series(sol, np.linspace(0, 1, 81), 10.0)
    assert not np.all(ev.reliable)


def test_truncated_coefficients_flag_l_max():
    sol = ex1(0.2, l_max=3)
    assert not sol.complete
    ev = fourier_series(sol, [0.3], 1e-3)
    assert ev.reason == "l_max" and not ev.reliable.any()
    with pytest.raises(SeriesUnreliable) as info:
        fourier_psi(sol, 0.3, 1e-3)
    assert info.value.terms_used == 3


def test_argument_validation(ex1_nu2):
    with pytest.raises(DomainError):
        fourier_coefficients(np.sin, 0.0, 5)
    with pytest.raises(DomainError):
        fourier_coefficients(np.sin, 1.0, 0)
    with pytest.raises(DomainError):
        fourier_eval(ex1_nu2, 0.5, -1.0)


def test_quadrature_failure_reports_achieved():
    with pytest.raises(QuadratureError) as info:
        _cosine_moments(lambda x: np.abs(x - 1 / 3) ** 0.5, [1, 2], 1e-16, max_rounds=3)
    assert info.value.achieved >= 0


def test_shock_values():
    assert shock_exact(0.2, 3.0, 0.002) == pytest.approx(0.066667, abs=5e-7)
    assert shock_exact(1.0, 3.5, 0.002) == pytest.approx(0.000020, abs=5e-7)
    assert shock_exact(0.2, 1.7, 0.002) == pytest.approx(0.117647, abs=5e-7)
    assert shock_exact(0.0, 2.0, 0.002) == 0.0
    with pytest.raises(DomainError):
        shock_exact(0.5, 0.5, 0.002)


@given(st.floats(1e-5, 1.0), st.floats(1.0, 100.0), st.floats(0.0, 1.2))
@settings(max_examples=100, deadline=None)
def test_shock_is_finite_and_odd(nu, t, x):
    v = shock_exact(x, t, nu)
    assert np.isfinite(v) and 0 <= v <= x / t
    assert shock_exact(-x, t, nu) == -v


def test_two_mode_values():
    assert two_mode_exact(0.5, 0.0, 0.001) == pytest.approx(np.pi * 0.001 / 2, rel=1e-14)
    assert two_mode_exact(np.array([0.0, 2.0]), 1.0, 0.001) == pytest.approx([0.0, 0.0], abs=1e-18)
    assert abs(two_mode_exact(1.0, 3.0, 0.5)) <= 1e-16


@given(st.floats(0.0, 1.0), st.floats(0.0, 10.0), st.floats(1e-3, 1.0), st.booleans())
@settings(max_examples=100, deadline=None)
def test_two_mode_odd_about_one(d, t, nu, consistent):
    a = two_mode_exact(1 - d, t, nu, heat_consistent=consistent)
    b = two_mode_exact(1 + d, t, nu, heat_consistent=consistent)
    assert a == pytest.approx(-b, abs=1e-14)


def _burgers_residual(f, nu, x, t, e=1e-4):
    w = f(x, t)
    wt = (f(x, t + e) - f(x, t - e)) / (2 * e)
    wx = (f(x + e, t) - f(x - e, t)) / (2 * e)
    wxx = (f(x + e, t) - 2 * w + f(x - e, t)) / e**2
    return wt + w * wx - nu / 2 * wxx


def test_two_mode_heat_consistent_solves_burgers():
    nu, x = 0.3, np.linspace(0.1, 1.9, 19)
    good = _burgers_residual(lambda x, t: two_mode_exact(x, t, nu, heat_consistent=True), nu, x, 0.7)
    printed = _burgers_residual(lambda x, t: two_mode_exact(x, t, nu), nu, x, 0.7)
    assert np.max(np.abs(good)) < 1e-6
    assert np.max(np.abs(printed)) > 1e-2


def test_shock_solves_burgers():
    nu, x = 0.05, np.linspace(0.05, 1.2, 24)
    r = _burgers_residual(lambda x, t: shock_exact(x, t, nu), nu, x, 2.0, e=1e-5)
    assert np.max(np.abs(r)) < 1e-4
