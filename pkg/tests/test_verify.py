import math
from dataclasses import replace

import numpy as np
import pytest

from ellipwave.constructor import (
    EllipticSolution,
    Regime,
    build_solution,
    construct_dsw,
    construct_fl,
    construct_nls,
    dsw_pair_evaluator,
)
from ellipwave.errors import ConstructionError, ParameterError
from ellipwave.quartic import RootQuadruple, quartic_roots
from ellipwave.reductions import DswParams, FokasLenellsParams, NlsParams, ReducedOde
from ellipwave.verify import (
    GridSpec,
    ResidualReport,
    ShootingRejected,
    conserved_c0_drift,
    dsw_coupling_residual,
    ode_residual_first_order,
    ode_residual_second_order,
    pde_residual_dsw,
    pde_residual_fl,
    pde_residual_nls,
    rk4_shooting_check,
)
from test_constructor import make_ode, quartic_from_roots

GRID = GridSpec(-5, 5, 1001)
FL = FokasLenellsParams(0.8, 0.3, 1.2, 0.8, 0.5, 0.2, 0.1, 0.6, 1.4)
NLS = NlsParams(1, 0.5, -1.2, -0.3)
DSW = DswParams(3, 2, 2, 1, 1)
DSW_C = (1.375, -0.625, -0.75)


@pytest.fixture(scope="module")
def fl():
    return construct_fl(FL, 0.4)


@pytest.fixture(scope="module")
def nls():
    return construct_nls(NLS, 0.3)


@pytest.fixture(scope="module")
def dsw():
    return construct_dsw(DSW, *DSW_C)


def constant_solution(value):
    return EllipticSolution(value, value, value, value, 0.0, 0.0, 0.0, 0.0, Regime.DEGENERATE)


class CoshProfile:
    """``U = cosh(k eta)`` solves ``A U'' = C U`` when ``k^2 = C/A``."""

    def __init__(self, k):
        self.k = k

    def envelope(self, eta):
        return np.cosh(self.k * eta)

    def envelope_derivative(self, eta):
        return self.k * np.sinh(self.k * eta)


class TestGridAndReport:
    def test_grid_invariants(self):
        with pytest.raises(ValueError):
            GridSpec(1, 0, 10)
        with pytest.raises(ValueError):
            GridSpec(0, 1, 1)
        with pytest.raises(ValueError):
            GridSpec(0, 1, 10, h_fd=0)
        assert GridSpec(0, 1, 11).points()[-1] == 1.0

    def test_report_fields(self):
        rep = ResidualReport.from_values(np.array([0.1, -0.3, 0.2]), np.array([1.0, 2.0, 3.0]), 2)
        assert rep.max_abs == 0.3 and rep.argmax_location == 2.0
        assert rep.max_abs >= rep.rms >= 0
        assert rep.n_evaluated + rep.n_skipped_near_pole == 5

    def test_all_skipped(self):
        with pytest.raises(ConstructionError):
            ResidualReport.from_values(np.array([]), np.array([]), 4)


class TestOdeOracles:
    def test_first_order(self, fl):
        assert ode_residual_first_order(fl.solution, fl.ode, GRID).max_abs < 1e-9

    def test_first_order_sensitivity(self, fl):
        bad = replace(fl.solution, u1=fl.solution.u1 + 0.01)
        assert ode_residual_first_order(bad, fl.ode, GRID).max_abs > 1e-4

    def test_zero_solution(self):
        ode = ReducedOde("fl", 0.5, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0)
        rep = ode_residual_first_order(constant_solution(0.0), ode, GRID)
        assert rep.max_abs == 0.0

    def test_second_order(self, fl):
        assert ode_residual_second_order(fl.solution, fl.ode, GRID).max_abs < 1e-6

    def test_linear_case(self):
        A, C = 1.5, 0.6
        ode = ReducedOde("linear", 0.0, C / A, 0.0, 0.0, 0.0, A, 0.0, C, 0.0)
        rep = ode_residual_second_order(CoshProfile(math.sqrt(C / A)), ode, GridSpec(-3, 3, 601))
        assert rep.max_abs < 1e-8

    def test_constant_at_repeated_root(self):
        con = construct_fl(FokasLenellsParams(1, 0, 1, 0, 0, 0, 0, 1, 1), 2.0)
        assert con.solution.is_constant
        assert ode_residual_second_order(con.solution, con.ode, GRID).max_abs < 1e-12
        assert ode_residual_first_order(con.solution, con.ode, GRID).max_abs < 1e-12

    def test_shift_invariance(self, nls):
        shifted = replace(nls.solution, eta0=1.7)
        a = ode_residual_first_order(nls.solution, nls.ode, GRID).max_abs
        b = ode_residual_first_order(shifted, nls.ode, GridSpec(-3.3, 6.7, 1001)).max_abs
        assert abs(a - b) < 1e-12


class TestPoleSkipping:
    def test_pole_solution(self):
        roots = (-0.3, -1.2, 1.1, 0.4)
        ode = make_ode(-1.0, *quartic_from_roots(roots))
        raw = quartic_roots(ode.quartic)
        by_value = {round(r.real, 9): r for r in raw.roots}
        rq = RootQuadruple(tuple(by_value[r] for r in roots), raw.classification, "manual")
        sol = build_solution(ode, rq)
        rep = ode_residual_first_order(sol, ode, GRID)
        assert rep.n_skipped_near_pole > 0
        assert rep.n_evaluated + rep.n_skipped_near_pole == GRID.n
        eta = GRID.points()
        peak = np.max(np.abs(sol.envelope(eta, check_poles=False)))
        # relative to the size of U^4 next to the pole
        assert rep.max_abs < 1e-14 * (1 + peak**4)


class TestPdeOracles:
    def test_fl(self, fl):
        assert pde_residual_fl(fl.solution, fl.frame, FL, GRID).max_abs < 1e-5

    def test_fl_wrong_velocity(self, fl):
        frame = replace(fl.frame, v=fl.frame.v + 0.1)
        assert pde_residual_fl(fl.solution, frame, FL, GRID).max_abs > 1e-2

    def test_fl_constraint_precondition(self, fl):
        bad = replace(FL, sigma=FL.sigma + 0.1)
        with pytest.raises(ParameterError):
            pde_residual_fl(fl.solution, fl.frame, bad, GRID)

    def test_nls(self, nls):
        assert pde_residual_nls(nls.solution, nls.frame, NLS, GRID).max_abs < 1e-5

    def test_nls_plane_wave(self):
        # c0 = N^2/(4M) collapses the envelope to a constant
        N, M = (0.25 + 1.44 + 0.3) / 2, 0.25
        con = construct_nls(NLS, N**2 / (4 * M))
        assert con.solution.is_constant
        h = GRID.h_fd
        u = con.solution.u2
        # central stencils act on the carrier through their exact symbols
        symbol = (
            math.sin(NLS.omega * h) / h
            - 4 * math.sin(NLS.k1 * h / 2) ** 2 / h**2
            - 4 * math.sin(NLS.k2 * h / 2) ** 2 / h**2
            + NLS.sigma * u * u
        )
        rep = pde_residual_nls(con.solution, con.frame, NLS, GRID)
        np.testing.assert_allclose(rep.max_abs, abs(symbol * u), atol=5e-9)
        # the symbol tends to the exact dispersion relation, which is satisfied
        exact = NLS.omega - NLS.k1**2 - NLS.k2**2 + NLS.sigma * u * u
        assert abs(exact) < 1e-14

    def test_nls_slow_plane_wave(self):
        params = NlsParams(2, 0.05, 0.05, -0.005)
        N, M = (0.005 + 0.005) / 2, 0.5
        con = construct_nls(params, N**2 / (4 * M))
        assert con.solution.is_constant
        assert pde_residual_nls(con.solution, con.frame, params, GRID).max_abs < 1e-10

    def test_nls_corrupted_frequency(self, nls):
        frame = replace(nls.frame, omega=nls.frame.omega + 0.1)
        assert pde_residual_nls(nls.solution, frame, NLS, GRID).max_abs > 1e-2

    def test_dsw(self, dsw):
        pair = dsw_pair_evaluator(dsw.solution, DSW, DSW_C[0])
        assert pde_residual_dsw(pair, DSW, GRID, profile=dsw.solution).max_abs < 1e-4

    def test_dsw_equilibrium(self):
        params = DswParams(1, -1.5, 0.7, 2, 0.8)
        roots = (-1.0, -1.0, 0.5, 1.5)
        M = -params.p * (params.r + 2 * params.s) / (12 * params.omega * params.q)
        c2, c1, c0 = quartic_from_roots(roots)
        N = -M * c2
        cc0 = (-N * params.q * params.omega - params.omega**2) / params.r
        con = construct_dsw(params, cc0, M * c1, M * c0)
        assert con.solution.is_constant
        pair = dsw_pair_evaluator(con.solution, params, cc0)
        assert pde_residual_dsw(pair, params, GRID).max_abs < 1e-12

    def test_dsw_corrupted_coupling(self, dsw):
        pair = dsw_pair_evaluator(dsw.solution, DSW, DSW_C[0])
        bad = replace(DSW, s=DSW.s + 0.1)
        assert pde_residual_dsw(pair, bad, GRID).max_abs > 1e-2

    def test_dsw_coupling(self, dsw):
        assert dsw_coupling_residual(dsw.solution, DSW, DSW_C[0], GRID).max_abs < 1e-9

    def test_refinement_order(self, fl, nls):
        coarse = GridSpec(-5, 5, 201, h_fd=4e-3)
        fine = GridSpec(-5, 5, 201, h_fd=2e-3)
        r_fl = (pde_residual_fl(fl.solution, fl.frame, FL, coarse).max_abs
                / pde_residual_fl(fl.solution, fl.frame, FL, fine).max_abs)
        r_nls = (pde_residual_nls(nls.solution, nls.frame, NLS, coarse).max_abs
                 / pde_residual_nls(nls.solution, nls.frame, NLS, fine).max_abs)
        assert 3.0 < r_fl < 5.0
        assert 3.0 < r_nls < 5.0

    def test_equilibrium_all_zero(self):
        params = FokasLenellsParams(1, 0, 1, 0, 0, 0, 0, 1, 1)
        con = construct_fl(params, 2.0)
        for rep in (
            ode_residual_first_order(con.solution, con.ode, GRID),
            ode_residual_second_order(con.solution, con.ode, GRID),
            conserved_c0_drift(con.solution, con.ode, GRID),
        ):
            assert rep.max_abs <= 1e-12
        # the carrier exp(i(-x + t)) sees only stencil truncation
        h = GRID.h_fd
        u = con.solution.u2
        cx = (2 - 2 * math.cos(h)) / h**2
        symbol = -math.sin(h) / h - cx + 1.0 * u * u
        rep = pde_residual_fl(con.solution, con.frame, params, GRID)
        np.testing.assert_allclose(rep.max_abs, abs(symbol * u), atol=5e-9)
        assert abs(-1 - 1 + u * u) < 1e-14


class TestShooting:
    def test_one_period(self, fl):
        assert rk4_shooting_check(fl.solution, fl.ode).max_abs < 1e-6

    def test_step_halving(self, fl):
        span = fl.solution.period
        coarse = rk4_shooting_check(fl.solution, fl.ode, span, 100, max_energy_drift=np.inf).max_abs
        fine = rk4_shooting_check(fl.solution, fl.ode, span, 200, max_energy_drift=np.inf).max_abs
        assert 8.0 < coarse / fine < 32.0

    def test_half_span_doubled_steps(self, fl):
        span = fl.solution.period
        full = rk4_shooting_check(fl.solution, fl.ode, span, 100, max_energy_drift=np.inf).max_abs
        half = rk4_shooting_check(fl.solution, fl.ode, span / 2, 200, max_energy_drift=np.inf).max_abs
        assert full / half > 16.0

    def test_zero_span(self, fl):
        assert rk4_shooting_check(fl.solution, fl.ode, span=0.0).max_abs == 0.0

    def test_energy_rejection(self, fl):
        with pytest.raises(ShootingRejected):
            rk4_shooting_check(fl.solution, fl.ode, n_steps=8)

    def test_solitary(self):
        con = construct_nls(NlsParams(2, 1, 1, 1), 0.0)
        assert rk4_shooting_check(con.solution, con.ode).max_abs < 1e-6

    def test_dsw(self, dsw):
        assert rk4_shooting_check(dsw.solution, dsw.ode).max_abs < 1e-6


class TestConservedConstant:
    def test_valid(self, fl):
        assert conserved_c0_drift(fl.solution, fl.ode, GRID).std < 1e-10

    def test_mismatch_detected(self, fl):
        ode = replace(fl.ode, C2=fl.ode.C2 + 1e-3)
        rep = conserved_c0_drift(fl.solution, ode, GRID)
        np.testing.assert_allclose(rep.mean, -1e-3, rtol=1e-6)
        np.testing.assert_allclose(rep.max_abs, 1e-3, rtol=1e-6)

    def test_solitary_zero(self):
        con = construct_nls(NlsParams(2, 1, 1, 1), 0.0)
        rep = conserved_c0_drift(con.solution, con.ode, GridSpec(-10, 10, 2001))
        assert rep.max_abs < 1e-10
