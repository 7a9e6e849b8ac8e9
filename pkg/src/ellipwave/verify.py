"""Numerical oracles that certify constructed solutions.

Two derivative routes are used so neither the elliptic module nor the
constructor can certify itself: analytic derivatives (chain rule through
``sn' = cn dn``) for the ODE residuals, and central finite differences of
the assembled fields for the PDE residuals.

Profiles passed to the ODE oracles only need ``envelope(eta)`` and
``envelope_derivative(eta)``; ``denominator(eta)`` is optional and enables
pole skipping.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .constructor import (
    EllipticSolution,
    Regime,
    WaveFrame,
    evaluate_field_fl,
    evaluate_field_nls,
)
from .elliptic import complete_K
from .errors import ConstructionError
from .reductions import DswParams, FokasLenellsParams, NlsParams, ReducedOde, dsw_recover_u

__all__ = [
    "GridSpec",
    "ResidualReport",
    "ShootingRejected",
    "ode_residual_first_order",
    "ode_residual_second_order",
    "pde_residual_fl",
    "pde_residual_nls",
    "pde_residual_dsw",
    "dsw_coupling_residual",
    "rk4_shooting_check",
    "conserved_c0_drift",
    "near_pole_mask",
]

POLE_RADIUS_FACTOR = 10.0
POLE_SAMPLES = 21
POLE_TOL = 1e-13
SOLITARY_HALF_SPAN = 6.0


class ShootingRejected(ArithmeticError):
    """RK4 energy drift exceeded the acceptance bound; use more steps."""


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    n: int
    h_fd: float = 1e-3

    def __post_init__(self):
        if not self.stop > self.start:
            raise ValueError("grid needs stop > start")
        if self.n < 2:
            raise ValueError("grid needs n >= 2")
        if not self.h_fd > 0:
            raise ValueError("grid needs h_fd > 0")

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n)


@dataclass(frozen=True)
class ResidualReport:
    """Summary of residual values over a grid.

    ``mean`` and ``std`` describe the signed residual (its modulus when the
    residual is complex).
    """

    max_abs: float
    rms: float
    argmax_location: float | tuple[float, ...]
    n_evaluated: int
    n_skipped_near_pole: int
    mean: float = 0.0
    std: float = 0.0

    @classmethod
    def from_values(cls, values, locations, n_skipped: int = 0) -> "ResidualReport":
        values = np.asarray(values)
        if values.size == 0:
            raise ConstructionError("every grid point was skipped near a pole")
        mag = np.abs(values)
        i = int(np.argmax(mag))
        loc = locations[i]
        loc = tuple(float(c) for c in loc) if np.ndim(loc) else float(loc)
        signed = mag if np.iscomplexobj(values) else values
        return cls(
            max_abs=float(mag[i]),
            rms=float(np.sqrt(np.mean(mag * mag))),
            argmax_location=loc,
            n_evaluated=int(values.size),
            n_skipped_near_pole=int(n_skipped),
            mean=float(np.mean(signed)),
            std=float(np.std(signed)),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        if isinstance(self.argmax_location, tuple):
            d["argmax_location"] = list(self.argmax_location)
        return d


def near_pole_mask(profile, eta, radius: float) -> np.ndarray:
    """True where a pole of ``profile`` lies within ``radius`` of ``eta``.

    A pole is detected as a sign change or a near-zero value of the
    envelope denominator on a stencil of sub-points around each location.
    """
    eta = np.asarray(eta, dtype=float)
    den_fn = getattr(profile, "denominator", None)
    if den_fn is None or getattr(profile, "is_constant", False):
        return np.zeros(eta.shape, dtype=bool)
    offsets = np.linspace(-radius, radius, POLE_SAMPLES)
    den = den_fn(eta[..., None] + offsets)
    scale = max(1e-300, float(np.max(np.abs(den))))
    small = np.any(np.abs(den) <= POLE_TOL * scale, axis=-1)
    flips = np.any(np.sign(den[..., 1:]) != np.sign(den[..., :-1]), axis=-1)
    return small | flips


def _split(profile, eta, h_fd):
    eta = np.asarray(eta, dtype=float)
    mask = near_pole_mask(profile, eta, POLE_RADIUS_FACTOR * h_fd)
    return eta[~mask], int(mask.sum())


def _call(fn, arg):
    try:
        return fn(arg, check_poles=False)
    except TypeError:
        return fn(arg)


def ode_residual_first_order(profile, ode: ReducedOde, grid: GridSpec) -> ResidualReport:
    """``U'^2 + M U^4 - N U^2 + C1 U + C2`` with analytic ``U'``.

    Uses the ODE's own coefficients, not the roots, so a wrong root cannot
    hide behind a consistent construction.
    """
    eta, skipped = _split(profile, grid.points(), grid.h_fd)
    u = _call(profile.envelope, eta)
    du = _call(profile.envelope_derivative, eta)
    return ResidualReport.from_values(ode.first_integral(u, du), eta, skipped)


def ode_residual_second_order(
    profile, ode: ReducedOde, grid: GridSpec, h: float = 1e-4
) -> ResidualReport:
    """``A U'' + B U^3 - C U + A C1/2`` with ``U''`` a central difference of ``U'``."""
    eta, skipped = _split(profile, grid.points(), max(h, grid.h_fd))
    u = _call(profile.envelope, eta)
    dp = _call(profile.envelope_derivative, eta + h)
    dm = _call(profile.envelope_derivative, eta - h)
    d2u = (dp - dm) / (2.0 * h)
    return ResidualReport.from_values(ode.second_order(u, d2u), eta, skipped)


def conserved_c0_drift(profile, ode: ReducedOde, grid: GridSpec) -> ResidualReport:
    """Deviation of the implied integration constant from the supplied one.

    ``c_implied = -U'^2 - M U^4 + N U^2 - C1 U`` should equal ``C2`` (the
    retained ``c0`` for FL and NLS) everywhere.  The report's ``std`` is
    the spread of ``c_implied`` and ``mean`` its offset from ``C2``.
    """
    eta, skipped = _split(profile, grid.points(), grid.h_fd)
    u = _call(profile.envelope, eta)
    du = _call(profile.envelope_derivative, eta)
    u2 = u * u
    implied = -du * du - (ode.M * u2 - ode.N) * u2 - ode.C1 * u
    return ResidualReport.from_values(implied - ode.C2, eta, skipped)


def _xt_points(grid: GridSpec, times):
    x = grid.points()
    times = np.atleast_1d(np.asarray(times, dtype=float))
    X, T = np.meshgrid(x, times, indexing="ij")
    return X.ravel(), T.ravel()


def pde_residual_fl(
    sol: EllipticSolution,
    frame: WaveFrame,
    params: FokasLenellsParams,
    grid: GridSpec,
    times=(0.0, 0.5, 1.0),
) -> ResidualReport:
    """Complex residual of the Fokas-Lenells equation by central differences.

    ``i q_t + a1 q_xx + a2 q_xt + (b q + i sigma q_x)|q|^2
    - i[alpha q_x + lambda (|q|^2 q)_x + mu (|q|^2)_x q]`` on an (x, t) grid.
    """
    params.validate()
    h = grid.h_fd
    x, t = _xt_points(grid, times)
    keep = ~near_pole_mask(sol, x - frame.v * t, POLE_RADIUS_FACTOR * h)
    x, t = x[keep], t[keep]

    def q(dx, dt):
        return evaluate_field_fl(sol, frame, x + dx, t + dt, check_poles=False)

    q0 = q(0, 0)
    qxp, qxm = q(h, 0), q(-h, 0)
    qtp, qtm = q(0, h), q(0, -h)
    q_t = (qtp - qtm) / (2 * h)
    q_x = (qxp - qxm) / (2 * h)
    q_xx = (qxp - 2 * q0 + qxm) / (h * h)
    q_xt = (q(h, h) - q(h, -h) - q(-h, h) + q(-h, -h)) / (4 * h * h)
    m0, mp, mm = np.abs(q0) ** 2, np.abs(qxp) ** 2, np.abs(qxm) ** 2
    m_x = (mp - mm) / (2 * h)
    mq_x = (mp * qxp - mm * qxm) / (2 * h)

    p = params
    res = (
        1j * q_t
        + p.a1 * q_xx
        + p.a2 * q_xt
        + (p.b * q0 + 1j * p.sigma * q_x) * m0
        - 1j * (p.alpha * q_x + p.lambda_ * mq_x + p.mu * m_x * q0)
    )
    return ResidualReport.from_values(res, np.column_stack([x, t]), int((~keep).sum()))


def pde_residual_nls(
    sol: EllipticSolution,
    frame: WaveFrame,
    params: NlsParams,
    grid: GridSpec,
    ys=(0.0, 0.7),
    times=(0.0, 0.5),
) -> ResidualReport:
    """Residual of ``i q_t + q_xx + q_yy + sigma |q|^2 q`` on an (x, y, t) grid."""
    params.validate()
    sigma = params.sigma
    h = grid.h_fd
    X, Y, T = np.meshgrid(grid.points(), np.atleast_1d(ys), np.atleast_1d(times), indexing="ij")
    x, y, t = X.ravel(), Y.ravel(), T.ravel()
    keep = ~near_pole_mask(sol, x + y - frame.v * t, POLE_RADIUS_FACTOR * h)
    x, y, t = x[keep], y[keep], t[keep]

    def q(dx, dy, dt):
        return evaluate_field_nls(sol, frame, x + dx, y + dy, t + dt, check_poles=False)

    q0 = q(0, 0, 0)
    q_t = (q(0, 0, h) - q(0, 0, -h)) / (2 * h)
    q_xx = (q(h, 0, 0) - 2 * q0 + q(-h, 0, 0)) / (h * h)
    q_yy = (q(0, h, 0) - 2 * q0 + q(0, -h, 0)) / (h * h)
    res = 1j * q_t + q_xx + q_yy + sigma * np.abs(q0) ** 2 * q0
    return ResidualReport.from_values(res, np.column_stack([x, y, t]), int((~keep).sum()))


def pde_residual_dsw(
    pair,
    params: DswParams,
    grid: GridSpec,
    times=(0.0, 0.5, 1.0),
    profile=None,
) -> ResidualReport:
    """Worse of the two DSW residuals ``u_t + p v v_x`` and
    ``v_t + q v_xxx + r u v_x + s u_x v``.

    ``pair(x, t)`` returns ``(u, v)`` arrays.  ``v_xxx`` uses the five-point
    central stencil.  Pass the envelope as ``profile`` to enable pole
    skipping (its coordinate is ``x + omega t``).
    """
    params.validate()
    h = grid.h_fd
    x, t = _xt_points(grid, times)
    if profile is not None:
        keep = ~near_pole_mask(profile, x + params.omega * t, POLE_RADIUS_FACTOR * h)
    else:
        keep = np.ones(x.shape, dtype=bool)
    x, t = x[keep], t[keep]

    u0, v0 = pair(x, t)
    up, vp = pair(x + h, t)
    um, vm = pair(x - h, t)
    _, vp2 = pair(x + 2 * h, t)
    _, vm2 = pair(x - 2 * h, t)
    ut_p, vt_p = pair(x, t + h)
    ut_m, vt_m = pair(x, t - h)

    u_x = (up - um) / (2 * h)
    v_x = (vp - vm) / (2 * h)
    u_t = (ut_p - ut_m) / (2 * h)
    v_t = (vt_p - vt_m) / (2 * h)
    v_xxx = (vp2 - 2 * vp + 2 * vm - vm2) / (2 * h**3)

    p = params
    r1 = u_t + p.p * v0 * v_x
    r2 = v_t + p.q * v_xxx + p.r * u0 * v_x + p.s * u_x * v0
    worse = np.where(np.abs(r1) >= np.abs(r2), r1, r2)
    return ResidualReport.from_values(worse, np.column_stack([x, t]), int((~keep).sum()))


def dsw_coupling_residual(
    sol: EllipticSolution, params: DswParams, c0: float, grid: GridSpec, h: float = 1e-3
) -> ResidualReport:
    """``omega u' + p v v'`` along ``xi`` with ``u`` from back-substitution.

    ``u'`` is a fourth-order five-point difference of the recovered ``u``;
    ``v'`` is analytic.
    """
    xi, skipped = _split(sol, grid.points(), max(h, grid.h_fd))

    def u_at(z):
        return dsw_recover_u(sol.envelope(z, check_poles=False), c0, params.omega, params.p)

    du = (-u_at(xi + 2 * h) + 8 * u_at(xi + h) - 8 * u_at(xi - h) + u_at(xi - 2 * h)) / (12 * h)
    v = sol.envelope(xi, check_poles=False)
    dv = sol.envelope_derivative(xi, check_poles=False)
    return ResidualReport.from_values(params.omega * du + params.p * v * dv, xi, skipped)


def _turning_offset(sol: EllipticSolution) -> float:
    # half-way between eta0 (U = u2, U' = 0) and the next turning point
    if sol.is_constant:
        return 0.0
    m_c, mu = sol.canonical
    if mu >= 1.0 - 1e-12:
        return 1.0 / sol.m_scale
    return 0.5 * complete_K(mu) / m_c


def rk4_shooting_check(
    sol: EllipticSolution,
    ode: ReducedOde,
    span: float | None = None,
    n_steps: int = 10_000,
    start: float | None = None,
    max_energy_drift: float = 1e-6,
) -> ResidualReport:
    """Integrate ``U'' = (C U - B U^3)/A - C1/2`` by classical RK4 and compare.

    Initial data come from the closed form at ``start`` (by default midway
    to the first turning point, where ``U' != 0``).  The default span is one
    period ``4K/m`` of the canonical sine; a solitary pulse is integrated
    over ``eta0 +- 6/m``.

    Raises
    ------
    ShootingRejected
        If the first integral drifts by more than ``max_energy_drift``.
    """
    pulse = sol.regime is Regime.SOLITARY
    if start is None:
        # a pulse is shot across its core; errors grow like exp(2 m |eta|) in the tails
        if pulse:
            start = sol.eta0 - SOLITARY_HALF_SPAN / sol.m_scale
        else:
            start = sol.eta0 + _turning_offset(sol)
    if span is None:
        if pulse:
            span = 2.0 * SOLITARY_HALF_SPAN / sol.m_scale
        else:
            span = sol.period
        if not math.isfinite(span):
            raise ValueError("span is required for solutions without a finite period")
    if span == 0:
        return ResidualReport(0.0, 0.0, float(start), 1, 0)
    h = span / n_steps
    y = np.array([sol.envelope(start), sol.envelope_derivative(start)])

    def f(state):
        return np.array([state[1], ode.acceleration(state[0])])

    def energy(state):
        return ode.first_integral(state[0], state[1])

    e0 = energy(y)
    etas = start + h * np.arange(n_steps + 1)
    traj = np.empty(n_steps + 1)
    traj[0] = y[0]
    drift = 0.0
    for i in range(n_steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        traj[i + 1] = y[0]
        drift = max(drift, abs(energy(y) - e0))
    if drift > max_energy_drift:
        raise ShootingRejected(f"RK4 energy drift {drift:.3e} exceeds {max_energy_drift:.1e}")
    closed = sol.envelope(etas)
    return ResidualReport.from_values(traj - closed, etas)
