"""Traveling-wave reductions of the three PDEs to one quartic ODE.

Every reduction ends in the same normalized form::

    A U'' + B U**3 - C U + A*C1/2 = 0
    U'**2 + M U**4 - N U**2 + C1 U + C2 = 0,   M = B/(2A),  N = C/A

For Fokas-Lenells and NLS the odd term vanishes (``C1 = 0``) and ``C2`` is
the retained integration constant ``c0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import ParameterError
from .quartic import DepressedQuartic

__all__ = [
    "ParameterError",
    "FokasLenellsParams",
    "NlsParams",
    "DswParams",
    "ReducedOde",
    "fl_reduce",
    "fl_velocity_bracket",
    "nls_reduce",
    "dsw_reduce",
    "dsw_recover_u",
    "is_integrable_dsw",
]

CONSTRAINT_TOL = 1e-12


def _require_finite(obj):
    for f in fields(obj):
        val = getattr(obj, f.name)
        if not math.isfinite(val):
            raise ParameterError(f"{type(obj).__name__}.{f.name} must be finite, got {val!r}")


@dataclass(frozen=True)
class FokasLenellsParams:
    """Coefficients of the Fokas-Lenells equation plus the wave frame.

    ``sigma`` must equal ``3*lambda_ + 2*mu``; this is what makes the
    imaginary part of the reduced equation vanish.
    """

    a1: float
    a2: float
    b: float
    sigma: float
    alpha: float
    lambda_: float
    mu: float
    kappa: float
    omega: float
    theta0: float = 0.0

    def validate(self) -> None:
        _require_finite(self)
        if abs(self.a2 * self.kappa - 1.0) < CONSTRAINT_TOL:
            raise ParameterError("a2*kappa = 1 leaves the wave velocity undetermined")
        defect = self.sigma - (3.0 * self.lambda_ + 2.0 * self.mu)
        if abs(defect) >= CONSTRAINT_TOL:
            raise ParameterError(
                f"constraint sigma = 3*lambda + 2*mu violated (defect {defect:.3e})"
            )


@dataclass(frozen=True)
class NlsParams:
    """(2+1)-D cubic NLS ``i q_t + q_xx + q_yy + sigma |q|^2 q = 0``."""

    sigma: float
    k1: float
    k2: float
    omega: float
    theta0: float = 0.0

    def validate(self) -> None:
        _require_finite(self)
        if self.sigma == 0:
            raise ParameterError("sigma = 0 removes the cubic term")


@dataclass(frozen=True)
class DswParams:
    """Drinfel'd-Sokolov-Wilson system in the frame ``xi = x + omega*t``."""

    p: float
    q: float
    r: float
    s: float
    omega: float

    def validate(self) -> None:
        _require_finite(self)
        for name in ("p", "q", "r", "s", "omega"):
            if getattr(self, name) == 0:
                raise ParameterError(f"DSW parameter {name} must be nonzero")


@dataclass(frozen=True)
class ReducedOde:
    """Quartic first-order ODE shared by all three equations.

    ``A, B, C`` are the coefficients of the second-order form and ``v`` the
    wave velocity of the co-moving coordinate (``-omega`` for DSW, whose
    coordinate is ``x + omega*t``).
    """

    equation: str
    M: float
    N: float
    C1: float
    C2: float
    v: float
    A: float
    B: float
    C: float
    c0: float

    @property
    def quartic(self) -> DepressedQuartic:
        """Monic polynomial ``U**4 - (N/M) U**2 + (C1/M) U + C2/M``."""
        return DepressedQuartic(-self.N / self.M, self.C1 / self.M, self.C2 / self.M)

    def first_integral(self, u, du):
        """Left side of ``U'^2 + M U^4 - N U^2 + C1 U + C2 = 0``."""
        u2 = u * u
        return du * du + (self.M * u2 - self.N) * u2 + self.C1 * u + self.C2

    def second_order(self, u, d2u):
        """Left side of ``A U'' + B U^3 - C U + A*C1/2 = 0``."""
        return self.A * d2u + (self.B * u * u - self.C) * u + 0.5 * self.A * self.C1

    def acceleration(self, u):
        """``U''`` as a function of ``U`` along solutions."""
        return ((self.C - self.B * u * u) * u) / self.A - 0.5 * self.C1


def fl_velocity_bracket(params: FokasLenellsParams, v: float) -> float:
    """Coefficient ``a2 (v kappa + omega) - (v + 2 a1 kappa) - alpha`` of U' in the imaginary part."""
    p = params
    return p.a2 * (v * p.kappa + p.omega) - (v + 2.0 * p.a1 * p.kappa) - p.alpha


def fl_reduce(params: FokasLenellsParams, c0: float) -> ReducedOde:
    """Reduce Fokas-Lenells to ``U'^2 + (B/2A) U^4 - (C/A) U^2 + c0 = 0``.

    The velocity is the one that cancels the imaginary part,
    ``v = (a2*omega - alpha - 2*a1*kappa) / (1 - a2*kappa)``.  The cubic
    coefficient ``B = b + (sigma - lambda)*kappa`` is the one produced by the
    substitution itself.
    """
    params.validate()
    if not math.isfinite(c0):
        raise ParameterError("c0 must be finite")
    p = params
    v = (p.a2 * p.omega - p.alpha - 2.0 * p.a1 * p.kappa) / (1.0 - p.a2 * p.kappa)
    A = p.a1 - v * p.a2
    B = p.b + (p.sigma - p.lambda_) * p.kappa
    C = p.omega + p.a1 * p.kappa**2 - p.omega * p.kappa * p.a2 + p.alpha * p.kappa
    if A == 0:
        raise ParameterError("A = a1 - v*a2 vanishes (degenerate dispersion)")
    if B == 0:
        raise ParameterError("B = b + (sigma - lambda)*kappa vanishes (no quartic term)")
    return ReducedOde("fl", B / (2.0 * A), C / A, 0.0, float(c0), v, A, B, C, float(c0))


def nls_reduce(params: NlsParams, c0: float) -> ReducedOde:
    """Reduce the elliptic (mu = 1) cubic NLS.

    ``v = 2 (k1 + k2)`` and the second-order form is
    ``2 U'' + sigma U^3 - (k1^2 + k2^2 - omega) U = 0``, so ``M = sigma/4``
    and ``N = (k1^2 + k2^2 - omega)/2``.
    """
    params.validate()
    if not math.isfinite(c0):
        raise ParameterError("c0 must be finite")
    p = params
    v = 2.0 * (p.k1 + p.k2)
    A = 2.0
    B = p.sigma
    C = p.k1**2 + p.k2**2 - p.omega
    return ReducedOde("nls", B / (2.0 * A), C / A, 0.0, float(c0), v, A, B, C, float(c0))


def dsw_reduce(params: DswParams, c0: float, c1: float, c2: float) -> ReducedOde:
    """Reduce DSW to ``v'^2 + M v^4 - N v^2 + C1 v + C2 = 0``.

    ``M = -p (r + 2 s) / (12 omega q)`` and ``N = -(omega^2 + r c0)/(q omega)``.
    In second-order form ``A = q``, ``B = -p (r+2s)/(6 omega)`` and
    ``C = -(omega + r c0/omega)``.
    """
    params.validate()
    for name, val in (("c0", c0), ("c1", c1), ("c2", c2)):
        if not math.isfinite(val):
            raise ParameterError(f"{name} must be finite")
    p = params
    A = p.q
    B = -p.p * (p.r + 2.0 * p.s) / (6.0 * p.omega)
    C = -(p.omega + p.r * c0 / p.omega)
    if B == 0:
        raise ParameterError("r + 2s = 0 removes the quartic term (M = 0)")
    M = -p.p * (p.r + 2.0 * p.s) / (12.0 * p.omega * p.q)
    N = -(p.omega**2 + p.r * c0) / (p.q * p.omega)
    return ReducedOde("dsw", M, N, float(c1), float(c2), -p.omega, A, B, C, float(c0))


def dsw_recover_u(v_value, c0: float, omega: float, p: float):
    """Back-substitute ``u = (c0 - p v^2 / 2) / omega``; works pointwise on arrays."""
    if omega == 0:
        raise ParameterError("omega must be nonzero")
    v_value = np.asarray(v_value, dtype=float)
    u = (c0 - 0.5 * p * v_value * v_value) / omega
    return float(u) if u.ndim == 0 else u


def is_integrable_dsw(params: DswParams) -> bool:
    return (params.p, params.q, params.r, params.s) == (3.0, 2.0, 2.0, 1.0)
