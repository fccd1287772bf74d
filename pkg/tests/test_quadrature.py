import math

import mpmath as mp
import pytest

from mzvtools.errors import ConvergenceError, DivergenceError, DomainError
from mzvtools.quadrature import (
    IntegrandSpec,
    QuadResult,
    eta_value_by_integral,
    integrate,
    psi_value_by_integral,
    xi_value_by_integral,
)

mp.mp.dps = 25
Z2, Z3 = math.pi**2 / 6, float(mp.zeta(3))


def mp_integral(family, k_log, alpha, f):
    """Reference via mpmath tanh-sinh on the raw integrand."""

    def g(x):
        if family == "thm21_t":
            w = (1 - x) / (1 + x)
        else:
            w = 1 - x
        return f(x) * mp.log(w) ** k_log * w ** (-alpha) / x

    return float(mp.quad(g, [0, 0.5, 1]))


class TestSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            IntegrandSpec("nope", (2,))
        with pytest.raises(DivergenceError):
            IntegrandSpec("thm21_zeta", (2,), 0, 1.0)
        with pytest.raises(DomainError):
            IntegrandSpec("thm21_zeta", (2,), -1)
        with pytest.raises(DomainError):
            integrate(IntegrandSpec("thm21_zeta", (2,)), tol=0)


class TestIntegrals:
    def test_li2_over_x(self):
        # int Li_2(x)/x = Li_3(1)
        r = integrate(IntegrandSpec("thm21_zeta", (2,)), 1e-10)
        assert abs(r.value - Z3) < 1e-10
        assert isinstance(r, QuadResult) and r.err_estimate <= 1e-10
        assert r.remainder_bound <= 1e-10 / 16
        assert 0 < r.split_complement < 1e-3 and r.split_point == 1 - r.split_complement

    @pytest.mark.parametrize("k_log, alpha", [(0, 0.0), (1, 0.0), (2, -0.5), (1, 0.5)])
    def test_li1_against_mpmath(self, k_log, alpha):
        want = mp_integral("thm21_zeta", k_log, alpha, lambda x: -mp.log(1 - x))
        r = integrate(IntegrandSpec("thm21_zeta", (1,), k_log, alpha), 1e-9)
        assert abs(r.value - want) < 1e-9

    @pytest.mark.parametrize("k_log, alpha", [(0, 0.0), (1, -0.5)])
    def test_t_family_against_mpmath(self, k_log, alpha):
        want = mp_integral("thm21_t", k_log, alpha, lambda x: mp.polylog(2, x) - mp.polylog(2, -x))
        r = integrate(IntegrandSpec("thm21_t", (2,), k_log, alpha), 1e-9)
        assert abs(r.value - want) < 1e-9

    def test_eta_family_against_mpmath(self):
        want = mp_integral("thm23_eta", 1, -0.5, lambda x: mp.polylog(2, x / (x - 1)))
        r = integrate(IntegrandSpec("thm23_eta", (2,), 1, -0.5), 1e-9)
        assert abs(r.value - want) < 1e-9

    def test_li22_log_example(self):
        # int Li_{2,2}(x) log(1-x) / x = -2 zeta(3,2,1) - 2 zeta(2,3,1) - zeta(2,2,2)
        r = integrate(IntegrandSpec("thm21_zeta", (2, 2), 1), 1e-9)
        assert abs(r.value - (-0.41381267723583)) < 1e-9

    def test_error_estimate_is_honest(self):
        for tol in (1e-4, 1e-7, 1e-10):
            r = integrate(IntegrandSpec("thm21_zeta", (2,)), tol)
            assert abs(r.value - Z3) <= r.err_estimate <= tol

    def test_impossible_tolerance(self):
        with pytest.raises(ConvergenceError):
            integrate(IntegrandSpec("thm21_zeta", (1, 1), 2, 0.9), 1e-16)


class TestValues:
    def test_xi(self):
        assert abs(xi_value_by_integral((1,), 0, 1e-10).value - Z2) < 1e-9
        assert abs(xi_value_by_integral((1,), 1, 1e-10).value - 2 * Z3) < 1e-9

    def test_psi(self):
        assert abs(psi_value_by_integral((1,), 0, 1e-10).value - math.pi**2 / 4) < 1e-9
        assert abs(psi_value_by_integral((1,), 1, 1e-10).value - 3.5 * Z3) < 1e-9

    def test_eta(self):
        assert abs(eta_value_by_integral((1,), 0, 1e-10).value - Z2) < 1e-9
        # Li_{1,1}(1 - e^t) = t^2/2 gives eta(1; 1, 1) = -zeta(3)
        assert abs(eta_value_by_integral((1, 1), 0, 1e-10).value + Z3) < 1e-9

    def test_scaled(self):
        r = xi_value_by_integral((2,), 2, 1e-9)
        assert r.err_estimate <= 1e-9
        assert r.remainder_bound <= r.err_estimate
