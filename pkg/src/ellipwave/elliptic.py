"""Jacobi elliptic functions and the complete elliptic integral K.

Everything is evaluated in double precision from the arithmetic-geometric
mean (AGM) sequence; no external special-function library is used.  The
parameter convention is ``msq = k**2`` throughout (the "m" of
Abramowitz & Stegun ch. 16).

``jacobi_sn`` covers ``0 <= msq <= 1``.  ``jacobi_sn_general`` extends it to
any real parameter through the negative-parameter transformation
(A&S 16.10) and the reciprocal-modulus transformation (A&S 16.11).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import EllipticDomainError

__all__ = [
    "EllipticDomainError",
    "JacobiTriple",
    "agm",
    "complete_K",
    "jacobi_sn",
    "jacobi_sn_general",
    "sn_derivative",
    "reduce_parameter",
    "sn_period",
]

AGM_RTOL = 1e-15
AGM_MAXITER = 64
SNAP_TOL = 1e-12


class JacobiTriple(NamedTuple):
    sn: np.ndarray | float
    cn: np.ndarray | float
    dn: np.ndarray | float


def _check_msq(msq) -> float:
    if isinstance(msq, complex) or np.iscomplexobj(msq):
        if np.imag(msq) != 0:
            raise EllipticDomainError(f"complex parameter {msq!r} is not supported")
        msq = np.real(msq)
    msq = float(msq)
    if not math.isfinite(msq):
        raise EllipticDomainError(f"parameter must be finite, got {msq!r}")
    return msq


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise EllipticDomainError("argument must be finite")
    return arr


def _unwrap(arr: np.ndarray):
    return float(arr) if arr.ndim == 0 else arr


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two non-negative numbers."""
    if a < 0 or b < 0:
        raise EllipticDomainError("AGM requires non-negative arguments")
    for _ in range(AGM_MAXITER):
        if abs(a - b) <= AGM_RTOL * a:
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise ArithmeticError(f"AGM did not converge for ({a}, {b})")


def complete_K(msq: float) -> float:
    """Complete elliptic integral of the first kind, ``K(m) = pi / (2 AGM(1, sqrt(1-m)))``.

    Raises
    ------
    EllipticDomainError
        If ``msq`` is outside ``[0, 1)``.
    """
    msq = _check_msq(msq)
    if not 0.0 <= msq < 1.0:
        raise EllipticDomainError(f"complete_K needs 0 <= msq < 1, got {msq}")
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - msq)))


def _landen_sequence(msq: float) -> tuple[list[float], list[float]]:
    # a_n and c_n of the descending AGM / Landen sequence (A&S 16.4)
    a = [1.0]
    c = [math.sqrt(msq)]
    b = math.sqrt(1.0 - msq)
    for _ in range(AGM_MAXITER):
        an, bn = a[-1], b
        if abs(an - bn) <= AGM_RTOL * an:
            return a, c
        a.append(0.5 * (an + bn))
        c.append(0.5 * (an - bn))
        b = math.sqrt(an * bn)
    raise ArithmeticError(f"Landen sequence did not converge for msq={msq}")


def jacobi_sn(x, msq: float) -> JacobiTriple:
    """Return ``(sn, cn, dn)`` at ``x`` for a parameter ``0 <= msq <= 1``.

    ``x`` may be a scalar or an array; the result has the same shape.
    Parameters within ``1e-12`` of 0 or 1 use the closed forms
    ``(sin, cos, 1)`` and ``(tanh, sech, sech)``.
    """
    msq = _check_msq(msq)
    if not 0.0 <= msq <= 1.0:
        raise EllipticDomainError(f"jacobi_sn needs 0 <= msq <= 1, got {msq}")
    x = _as_array(x)

    if msq <= SNAP_TOL:
        return JacobiTriple(_unwrap(np.sin(x)), _unwrap(np.cos(x)), _unwrap(np.ones_like(x)))
    if msq >= 1.0 - SNAP_TOL:
        sech = 1.0 / np.cosh(x)
        return JacobiTriple(_unwrap(np.tanh(x)), _unwrap(sech), _unwrap(sech.copy()))

    a, c = _landen_sequence(msq)
    n = len(a) - 1
    phi = (2.0**n) * a[n] * x
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[i] / a[i] * np.sin(phi)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    # dn > 0 for real x; the cos-ratio form loses accuracy near sn = +-1
    dn = np.sqrt(1.0 - msq * sn * sn)
    return JacobiTriple(_unwrap(sn), _unwrap(cn), _unwrap(dn))


def reduce_parameter(msq: float) -> tuple[float, float]:
    """Map any real parameter to ``(scale, canonical_msq)`` with ``canonical_msq`` in [0, 1].

    ``sn(x | msq)`` is built from ``sn(scale * x | canonical_msq)``; the
    negative-parameter rule is tried first, then the reciprocal rule.
    """
    msq = _check_msq(msq)
    if msq < 0.0:
        scale = math.sqrt(1.0 - msq)
        return scale, -msq / (1.0 - msq)
    if msq > 1.0:
        return math.sqrt(msq), 1.0 / msq
    return 1.0, msq


def jacobi_sn_general(x, msq: float) -> JacobiTriple:
    """Jacobi ``(sn, cn, dn)`` for any finite real parameter.

    For ``msq > 1``::

        sn(x|m) = sn(sqrt(m) x | 1/m) / sqrt(m)
        cn(x|m) = dn(sqrt(m) x | 1/m)
        dn(x|m) = cn(sqrt(m) x | 1/m)

    For ``msq < 0`` with ``mu = -m/(1-m)`` and ``s = sqrt(1-m)``::

        sn(x|m) = sd(s x | mu) / s,  cn(x|m) = cd(s x | mu),  dn(x|m) = nd(s x | mu)

    All three are real for real ``x``.
    """
    msq = _check_msq(msq)
    if 0.0 <= msq <= 1.0:
        return jacobi_sn(x, msq)
    scale, mu = reduce_parameter(msq)
    sn, cn, dn = jacobi_sn(np.asarray(x, dtype=float) * scale, mu)
    if msq > 1.0:
        return JacobiTriple(sn / scale, dn, cn)
    return JacobiTriple(sn / (scale * dn), cn / dn, 1.0 / dn)


def sn_derivative(x, msq: float):
    """``d sn(x|msq) / dx = cn * dn``, valid for every real parameter."""
    _, cn, dn = jacobi_sn_general(x, msq)
    return cn * dn


def sn_period(msq: float) -> float:
    """Real period ``4 K / scale`` of ``sn(x | msq)``; ``inf`` at ``msq == 1``."""
    scale, mu = reduce_parameter(msq)
    if mu >= 1.0 - SNAP_TOL:
        return math.inf
    return 4.0 * complete_K(mu) / scale
