"""Elliptic-sine envelopes built from four ordered roots.

With ordered roots ``u1..u4`` of the quartic in ``U'^2 + M P(U) = 0``
the envelope is::

    U = [u1 (u3-u2) V^2 + u2 (u1-u3)] / [(u3-u2) V^2 + (u1-u3)]
    V = sn(m (eta - eta0) | p_sq)

    e    = (u1-u3) / (u3-u2)
    m^2  = (M/4) (u4-u2) (u1-u3)
    p_sq = (u1-u4)(u3-u2) / ((u4-u2)(u1-u3))

``V`` starts at 0, so ``U(eta0) = u2``.  When ``p_sq > 1`` the sine only
reaches ``V^2 = 1/p_sq``, where ``U = u4``; when ``p_sq <= 1`` it reaches
``V^2 = 1`` and ``U = u3``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import elliptic
from .errors import ComplexRootsError, ConstructionError, PoleError
from .quartic import (
    RootQuadruple,
    biquadratic_roots,
    order_roots,
    quartic_roots,
)
from .reductions import (
    DswParams,
    FokasLenellsParams,
    NlsParams,
    ReducedOde,
    dsw_recover_u,
    dsw_reduce,
    fl_reduce,
    nls_reduce,
)

__all__ = [
    "Regime",
    "ConstructionError",
    "PoleError",
    "EllipticSolution",
    "WaveFrame",
    "SolitaryWave",
    "Construction",
    "build_solution",
    "evaluate_envelope",
    "evaluate_field_fl",
    "evaluate_field_nls",
    "evaluate_dsw_pair",
    "dsw_pair_evaluator",
    "solitary_limit",
    "construct_fl",
    "construct_nls",
    "construct_dsw",
]

ROOT_TOL = 1e-9
REGIME_TOL = 1e-12
POLE_TOL = 1e-13


class Regime(str, enum.Enum):
    GENERIC = "generic-elliptic"
    SOLITARY = "solitary-p2-equals-1"
    TRIGONOMETRIC = "trigonometric-p2-equals-0"
    DEGENERATE = "degenerate-repeated"


@dataclass(frozen=True)
class EllipticSolution:
    """Ordered roots and derived constants of one envelope.

    In the degenerate regime ``u2`` is a repeated root and the envelope is
    the constant ``u2``; ``e``, ``m_scale`` and ``p_sq`` are then 0.
    """

    u1: float
    u2: float
    u3: float
    u4: float
    e: float
    m_scale: float
    p_sq: float
    eta0: float
    regime: Regime

    @property
    def roots(self) -> tuple[float, float, float, float]:
        return (self.u1, self.u2, self.u3, self.u4)

    @property
    def m_sq(self) -> float:
        return self.m_scale * self.m_scale

    @property
    def is_constant(self) -> bool:
        return self.regime is Regime.DEGENERATE

    @property
    def turning_root(self) -> float:
        """Root reached opposite ``u2``: ``u4`` if ``p_sq > 1``, else ``u3``."""
        if self.is_constant:
            return self.u2
        return self.u4 if self.p_sq > 1.0 else self.u3

    @property
    def band(self) -> tuple[float, float]:
        """Closed interval swept by the envelope."""
        a, b = self.u2, self.turning_root
        return (min(a, b), max(a, b))

    @property
    def canonical(self) -> tuple[float, float]:
        """``(m_scale_canonical, p_sq_canonical)`` after the modulus transformation."""
        scale, mu = elliptic.reduce_parameter(self.p_sq)
        return self.m_scale * scale, mu

    @property
    def period(self) -> float:
        """``4 K(p_sq_canonical) / m_scale_canonical``; ``inf`` for solitary and constant."""
        if self.is_constant or self.regime is Regime.SOLITARY:
            return math.inf
        m_c, mu = self.canonical
        return 4.0 * elliptic.complete_K(mu) / m_c

    def _sn(self, eta):
        arg = self.m_scale * (np.asarray(eta, dtype=float) - self.eta0)
        return elliptic.jacobi_sn_general(arg, self.p_sq)

    def _coeffs(self):
        return self.u3 - self.u2, self.u1 - self.u3

    def denominator(self, eta):
        """``(u3-u2) V^2 + (u1-u3)``; the envelope has a pole where this vanishes."""
        eta = np.asarray(eta, dtype=float)
        if self.is_constant:
            return np.ones_like(eta)
        a, b = self._coeffs()
        sn = self._sn(eta).sn
        return a * sn * sn + b

    def envelope(self, eta, check_poles: bool = True):
        eta = np.asarray(eta, dtype=float)
        if self.is_constant:
            out = np.full_like(eta, self.u2)
            return float(out) if out.ndim == 0 else out
        a, b = self._coeffs()
        sn = self._sn(eta).sn
        v2 = sn * sn
        den = a * v2 + b
        if check_poles:
            _check_poles(den, eta, max(abs(a), abs(b)))
        out = (self.u1 * a * v2 + self.u2 * b) / den
        return float(out) if np.ndim(out) == 0 else out

    def envelope_derivative(self, eta, check_poles: bool = True):
        """Analytic ``dU/deta`` through ``d sn / dx = cn dn``."""
        eta = np.asarray(eta, dtype=float)
        if self.is_constant:
            out = np.zeros_like(eta)
            return float(out) if out.ndim == 0 else out
        a, b = self._coeffs()
        sn, cn, dn = self._sn(eta)
        den = a * sn * sn + b
        if check_poles:
            _check_poles(den, eta, max(abs(a), abs(b)))
        du_dv2 = a * b * (self.u1 - self.u2) / (den * den)
        out = du_dv2 * 2.0 * sn * cn * dn * self.m_scale
        return float(out) if np.ndim(out) == 0 else out

    __call__ = envelope


def _check_poles(den, eta, scale):
    bad = np.abs(den) <= POLE_TOL * scale
    if np.any(bad):
        where = float(np.asarray(eta)[bad].flat[0]) if np.ndim(eta) else float(eta)
        raise PoleError(f"envelope denominator vanishes at eta = {where:.17g}", where)


@dataclass(frozen=True)
class WaveFrame:
    """Phase and co-moving coordinate of a traveling wave.

    FL uses ``eta = x - v t`` and phase ``-kappa x + omega t + theta0``.
    NLS uses ``z = x + y - v t`` and phase ``k1 x + k2 y - omega t + theta0``.
    """

    kappa: float = 0.0
    omega: float = 0.0
    theta0: float = 0.0
    v: float = 0.0
    k1: float = 0.0
    k2: float = 0.0

    @classmethod
    def for_fl(cls, params: FokasLenellsParams, ode: ReducedOde) -> "WaveFrame":
        return cls(kappa=params.kappa, omega=params.omega, theta0=params.theta0, v=ode.v)

    @classmethod
    def for_nls(cls, params: NlsParams, ode: ReducedOde) -> "WaveFrame":
        return cls(omega=params.omega, theta0=params.theta0, v=ode.v, k1=params.k1, k2=params.k2)


def build_solution(ode: ReducedOde, roots: RootQuadruple, eta0: float = 0.0) -> EllipticSolution:
    """Compute ``e``, ``m``, ``p_sq`` and the regime from ordered real roots.

    Raises
    ------
    ConstructionError
        When ``m**2 <= 0`` ("no real elliptic construction") or when root
        coincidences zero a denominator of ``e``, ``m**2`` or ``p_sq``.
    """
    if roots.ordering == "unordered":
        raise ValueError("roots must be labelled with order_roots first")
    u1, u2, u3, u4 = roots.real
    scale = max(1.0, *(abs(u) for u in (u1, u2, u3, u4)))
    tol = ROOT_TOL * scale

    if any(abs(u2 - u) <= tol for u in (u1, u3, u4)):
        return EllipticSolution(u1, u2, u3, u4, 0.0, 0.0, 0.0, eta0, Regime.DEGENERATE)

    if abs(u1 - u3) <= tol or abs(u4 - u2) <= tol:
        raise ConstructionError(f"degenerate denominators for roots {roots.real}")

    e = (u1 - u3) / (u3 - u2)
    m_sq = 0.25 * ode.M * (u4 - u2) * (u1 - u3)
    if not m_sq > 0:
        raise ConstructionError(f"no real elliptic construction: m^2 = {m_sq:.6g} <= 0")
    p_sq = (u1 - u4) * (u3 - u2) / ((u4 - u2) * (u1 - u3))
    if not math.isfinite(p_sq):
        raise ConstructionError("no real elliptic construction: p^2 is not finite")

    if abs(p_sq - 1.0) <= REGIME_TOL:
        p_sq, regime = 1.0, Regime.SOLITARY
    elif abs(p_sq) <= REGIME_TOL:
        p_sq, regime = 0.0, Regime.TRIGONOMETRIC
    else:
        regime = Regime.GENERIC
    return EllipticSolution(u1, u2, u3, u4, e, math.sqrt(m_sq), p_sq, float(eta0), regime)


def evaluate_envelope(sol: EllipticSolution, eta):
    """``U(eta)``; raises :class:`PoleError` if the denominator vanishes."""
    return sol.envelope(eta)


def evaluate_field_fl(sol: EllipticSolution, frame: WaveFrame, x, t, check_poles: bool = True):
    """``q(x, t) = U(x - v t) exp(i(-kappa x + omega t + theta0))``."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    u = sol.envelope(x - frame.v * t, check_poles=check_poles)
    return u * np.exp(1j * (-frame.kappa * x + frame.omega * t + frame.theta0))


def evaluate_field_nls(
    sol: EllipticSolution, frame: WaveFrame, x, y, t, check_poles: bool = True
):
    """``q(x, y, t) = U(x + y - v t) exp(i(k1 x + k2 y - omega t + theta0))``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    u = sol.envelope(x + y - frame.v * t, check_poles=check_poles)
    return u * np.exp(1j * (frame.k1 * x + frame.k2 * y - frame.omega * t + frame.theta0))


def evaluate_dsw_pair(
    sol: EllipticSolution, params: DswParams, c0: float, xi, check_poles: bool = True
):
    """``(u, v)`` at ``xi``; ``v`` is the envelope and ``u`` its back-substitution."""
    v = sol.envelope(xi, check_poles=check_poles)
    return dsw_recover_u(v, c0, params.omega, params.p), v


def dsw_pair_evaluator(
    sol: EllipticSolution, params: DswParams, c0: float, check_poles: bool = False
):
    """Callable ``(x, t) -> (u, v)`` on the lab frame, ``xi = x + omega t``."""

    def pair(x, t):
        xi = np.asarray(x, dtype=float) + params.omega * np.asarray(t, dtype=float)
        return evaluate_dsw_pair(sol, params, c0, xi, check_poles)

    return pair


@dataclass(frozen=True)
class SolitaryWave:
    """Localized pulse obtained when ``p_sq = 1``.

    Written with ``S = sech(m (eta - eta0))``::

        U = baseline - depth S^2 / (span - rise S^2)

    which runs from ``u2`` at ``eta0`` to ``baseline = u3`` at infinity.
    """

    baseline: float
    peak: float
    depth: float
    span: float
    rise: float
    m_scale: float
    eta0: float

    @property
    def amplitude(self) -> float:
        return abs(self.peak - self.baseline)

    @property
    def width(self) -> float:
        return 1.0 / self.m_scale

    def __call__(self, eta):
        s = 1.0 / np.cosh(self.m_scale * (np.asarray(eta, dtype=float) - self.eta0))
        s2 = s * s
        out = self.baseline - self.depth * s2 / (self.span - self.rise * s2)
        return float(out) if np.ndim(out) == 0 else out


def solitary_limit(sol: EllipticSolution) -> SolitaryWave:
    """Hyperbolic closed form of a ``p_sq = 1`` solution.

    For the even quartic with ``u_minus = 0`` this is
    ``U = -sqrt(u_plus) / cosh(2 m (eta - eta0))``.
    """
    if sol.regime is not Regime.SOLITARY:
        raise ConstructionError(f"solitary limit needs p_sq = 1, regime is {sol.regime.value}")
    u1, u2, u3 = sol.u1, sol.u2, sol.u3
    return SolitaryWave(
        baseline=u3,
        peak=u2,
        depth=(u1 - u3) * (u3 - u2),
        span=u1 - u2,
        rise=u3 - u2,
        m_scale=sol.m_scale,
        eta0=sol.eta0,
    )


@dataclass(frozen=True)
class Construction:
    """Everything produced on the way from parameters to an envelope."""

    ode: ReducedOde
    roots: RootQuadruple
    solution: EllipticSolution
    frame: WaveFrame | None = None


def _even_roots(ode: ReducedOde) -> RootQuadruple:
    bq = biquadratic_roots(ode.N / ode.M, ode.C2 / ode.M)
    if not bq.is_real:
        raise ComplexRootsError(
            f"complex u±: discriminant (N/M)^2 - 4 C0/M = {bq.discriminant:.6g} < 0"
        )
    if bq.u_minus.real < 0:
        raise ComplexRootsError(
            f"u- = {bq.u_minus.real:.6g} < 0 gives imaginary roots ±sqrt(u-)"
        )
    return order_roots(quartic_roots(ode.quartic), "biquadratic")


def construct_fl(params: FokasLenellsParams, c0: float, eta0: float = 0.0) -> Construction:
    """Full pipeline for Fokas-Lenells: reduce, solve the even quartic, build."""
    ode = fl_reduce(params, c0)
    roots = _even_roots(ode)
    return Construction(ode, roots, build_solution(ode, roots, eta0), WaveFrame.for_fl(params, ode))


def construct_nls(params: NlsParams, c0: float, eta0: float = 0.0) -> Construction:
    ode = nls_reduce(params, c0)
    roots = _even_roots(ode)
    return Construction(ode, roots, build_solution(ode, roots, eta0), WaveFrame.for_nls(params, ode))


def construct_dsw(
    params: DswParams, c0: float, c1: float, c2: float, xi0: float = 0.0
) -> Construction:
    """DSW pipeline; the quartic generally has an odd term so Ferrari is used."""
    ode = dsw_reduce(params, c0, c1, c2)
    raw = quartic_roots(ode.quartic)
    if not raw.classification.is_real:
        raise ComplexRootsError(f"quartic roots are {raw.classification.value}")
    roots = order_roots(raw, "dsw", leading=ode.M)
    return Construction(ode, roots, build_solution(ode, roots, xi0))
