import numpy as np
import pytest

from ellipwave.errors import ParameterError
from ellipwave.quartic import biquadratic_roots
from ellipwave.reductions import (
    DswParams,
    FokasLenellsParams,
    NlsParams,
    dsw_recover_u,
    dsw_reduce,
    fl_reduce,
    fl_velocity_bracket,
    is_integrable_dsw,
    nls_reduce,
)

UNIT_FL = FokasLenellsParams(1, 0, 1, 0, 0, 0, 0, 1, 1)


def fl_set(a1, a2, b, lam, mu, alpha, kappa, omega):
    return FokasLenellsParams(a1, a2, b, 3 * lam + 2 * mu, alpha, lam, mu, kappa, omega)


class TestFokasLenells:
    def test_unit_set(self):
        ode = fl_reduce(UNIT_FL, 0.7)
        assert (ode.v, ode.A, ode.B, ode.C, ode.M, ode.N) == (-2, 1, 1, 2, 0.5, 2)
        assert ode.C1 == 0 and ode.C2 == 0.7 and ode.c0 == 0.7

    @pytest.mark.parametrize(
        "args",
        [
            (0.8, 0.3, 1.2, 0.2, 0.1, 0.5, 0.6, 1.4),
            (1.2, -0.2, 1.5, 0.3, -0.2, -0.3, -0.5, 1.5),
            (-0.6, 1.1, 0.4, 0.7, -0.9, 2.0, 0.3, -1.2),
        ],
    )
    def test_bracket_vanishes(self, args):
        p = fl_set(*args)
        ode = fl_reduce(p, 0.1)
        assert abs(fl_velocity_bracket(p, ode.v)) < 1e-12
        assert abs(fl_velocity_bracket(p, ode.v + 0.1)) > 1e-3

    def test_coefficients(self):
        p = fl_set(0.8, 0.3, 1.2, 0.2, 0.1, 0.5, 0.6, 1.4)
        ode = fl_reduce(p, 0.0)
        A = p.a1 - ode.v * p.a2
        B = p.b + (p.sigma - p.lambda_) * p.kappa
        np.testing.assert_allclose([ode.A, ode.B, ode.M], [A, B, B / (2 * A)], rtol=1e-15)

    def test_dispersion_singular(self):
        with pytest.raises(ParameterError, match="a2\\*kappa"):
            fl_reduce(FokasLenellsParams(1, 0.5, 1, 0, 0, 0, 0, 2, 1), 0.0)

    def test_constraint_violation(self):
        with pytest.raises(ParameterError, match="constraint"):
            fl_reduce(FokasLenellsParams(1, 0, 1, 0.3, 0, 0, 0, 1, 1), 0.0)

    def test_constraint_tolerance(self):
        fl_reduce(FokasLenellsParams(1, 0, 1, 1e-13, 0, 0, 0, 1, 1), 0.0)

    def test_no_quartic_term(self):
        # b + (sigma - lambda) kappa = 0
        with pytest.raises(ParameterError, match="B"):
            fl_reduce(FokasLenellsParams(1, 0, 0.4, 0.6, 0, 1.0, -1.2, 1, 1), 0.0)

    def test_degenerate_dispersion(self):
        # a1 = v a2 makes A vanish
        p = FokasLenellsParams(1.0, 1.0, 1, 0, 0.0, 0, 0, 0.0, 1.0)
        with pytest.raises(ParameterError, match="A"):
            fl_reduce(p, 0.0)

    def test_non_finite(self):
        with pytest.raises(ParameterError):
            fl_reduce(UNIT_FL, float("nan"))

    def test_derivative_consistency(self):
        # d/deta of the first integral equals 2 U' (second-order form) / A
        ode = fl_reduce(fl_set(0.8, 0.3, 1.2, 0.2, 0.1, 0.5, 0.6, 1.4), 0.3)
        u, du, d2u = 0.37, -0.21, 0.55
        lhs = 2 * du * d2u + 4 * ode.M * u**3 * du - 2 * ode.N * u * du
        np.testing.assert_allclose(lhs, 2 * du * ode.second_order(u, d2u) / ode.A, atol=1e-15)


class TestNls:
    def test_velocity(self):
        assert nls_reduce(NlsParams(2, 1, 1, 1), 0.0).v == 4

    def test_even_roots(self):
        ode = nls_reduce(NlsParams(2, 1, 1, 1), 0.0)
        bq = biquadratic_roots(ode.N / ode.M, ode.C2 / ode.M)
        assert (bq.u_plus, bq.u_minus) == (1.0, 0.0)

    @pytest.mark.parametrize("sigma, k1, k2, omega, c0", [(2, 1, 1, 1, 0.2), (0.7, -0.4, 1.3, 0.2, -1.1)])
    def test_bracket_coefficients(self, sigma, k1, k2, omega, c0):
        ode = nls_reduce(NlsParams(sigma, k1, k2, omega), c0)
        np.testing.assert_allclose(ode.N / ode.M, 2 / sigma * (k1**2 + k2**2 - omega), rtol=1e-14)
        np.testing.assert_allclose(ode.C2 / ode.M, 4 * c0 / sigma, rtol=1e-14)

    def test_zero_sigma(self):
        with pytest.raises(ParameterError):
            nls_reduce(NlsParams(0, 1, 1, 1), 0.0)


class TestDsw:
    def test_integrable(self):
        p = DswParams(3, 2, 2, 1, 1)
        ode = dsw_reduce(p, 0.0, 0.0, 0.0)
        assert (ode.M, ode.N) == (-0.5, -0.5)
        assert ode.v == -1
        assert is_integrable_dsw(p)
        assert not is_integrable_dsw(DswParams(3, 2, 2, 1.5, 1))

    def test_constants_retained(self):
        ode = dsw_reduce(DswParams(1, -1.5, 0.7, 2, 0.8), 0.3, -0.4, 0.9)
        assert (ode.C1, ode.C2, ode.c0) == (-0.4, 0.9, 0.3)
        q = ode.quartic
        np.testing.assert_allclose([q.c2, q.c1, q.c0], [-ode.N / ode.M, -0.4 / ode.M, 0.9 / ode.M])

    def test_second_order_scaling(self):
        # A, B, C reproduce M = B / 2A and N = C / A
        ode = dsw_reduce(DswParams(1, -1.5, 0.7, 2, 0.8), 0.3, 0.0, 0.0)
        np.testing.assert_allclose([ode.B / (2 * ode.A), ode.C / ode.A], [ode.M, ode.N], rtol=1e-14)

    @pytest.mark.parametrize("field", ["p", "q", "r", "s", "omega"])
    def test_zero_parameter(self, field):
        vals = dict(p=3, q=2, r=2, s=1, omega=1)
        vals[field] = 0
        with pytest.raises(ParameterError):
            dsw_reduce(DswParams(**vals), 0.0, 0.0, 0.0)

    def test_no_quartic_term(self):
        with pytest.raises(ParameterError, match="r \\+ 2s"):
            dsw_reduce(DswParams(3, 2, -2, 1, 1), 0.0, 0.0, 0.0)

    def test_recover_u(self):
        assert dsw_recover_u(0.0, 0.0, 1.0, 3.0) == 0.0
        assert dsw_recover_u(1.0, 0.0, 1.0, 3.0) == -1.5
        np.testing.assert_allclose(
            dsw_recover_u(np.array([0.0, 2.0]), 1.0, 2.0, 1.0), [0.5, -0.5]
        )
        with pytest.raises(ParameterError):
            dsw_recover_u(1.0, 0.0, 0.0, 3.0)
