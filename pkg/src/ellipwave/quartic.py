"""Roots of the depressed quartics ``U^4 + c2 U^2 + c1 U + c0``.

The production path is Ferrari's method: a resolvent cubic solved by
Cardano's formula, two quadratic factors, then Newton polishing.  Even
quartics (``c1 == 0``) go through the biquadratic closed form
``U^2 = u_plus, u_minus`` instead.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexRootsError

__all__ = [
    "RootClass",
    "DepressedQuartic",
    "BiquadraticRoots",
    "RootQuadruple",
    "ComplexRootsError",
    "biquadratic_roots",
    "quartic_roots",
    "order_roots",
    "classify_roots",
    "vieta_defects",
]

IMAG_TOL = 1e-9
REPEAT_TOL = 1e-9
# a real double root splits into a conjugate pair of size ~ sqrt(eps) * scale
SPLIT_TOL = 1e-7


class RootClass(str, enum.Enum):
    ALL_REAL_DISTINCT = "all-real-distinct"
    REAL_WITH_REPEATS = "real-with-repeats"
    TWO_REAL_TWO_COMPLEX = "two-real-two-complex"
    TWO_COMPLEX_PAIRS = "two-complex-pairs"

    @property
    def is_real(self) -> bool:
        return self in (RootClass.ALL_REAL_DISTINCT, RootClass.REAL_WITH_REPEATS)


@dataclass(frozen=True)
class DepressedQuartic:
    """``U**4 + c2*U**2 + c1*U + c0`` (no cubic term)."""

    c2: float
    c1: float
    c0: float

    def __post_init__(self):
        for name in ("c2", "c1", "c0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"quartic coefficient {name} is not finite")

    def __call__(self, u):
        u2 = u * u
        return (u2 + self.c2) * u2 + self.c1 * u + self.c0

    def derivative(self, u):
        return (4.0 * u * u + 2.0 * self.c2) * u + self.c1

    @property
    def scale(self) -> float:
        """Cauchy-style magnitude bound on the roots (at least 1)."""
        return max(1.0, abs(self.c2) ** 0.5, abs(self.c1) ** (1 / 3), abs(self.c0) ** 0.25)


@dataclass(frozen=True)
class BiquadraticRoots:
    """Roots ``u_plus, u_minus`` of ``u**2 - n_over_m*u + c0_over_m``."""

    u_plus: complex
    u_minus: complex
    discriminant: float

    @property
    def is_real(self) -> bool:
        return self.discriminant >= 0.0

    @property
    def is_repeated(self) -> bool:
        return self.discriminant == 0.0


@dataclass(frozen=True)
class RootQuadruple:
    roots: tuple[complex, complex, complex, complex]
    classification: RootClass
    ordering: str = "unordered"

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @property
    def real(self) -> tuple[float, float, float, float]:
        if not self.classification.is_real:
            raise ComplexRootsError(f"roots are {self.classification.value}")
        return tuple(float(r.real) for r in self.roots)


def biquadratic_roots(n_over_m: float, c0_over_m: float) -> BiquadraticRoots:
    """``u_pm = (N/M +- sqrt((N/M)**2 - 4 C0/M)) / 2``.

    A negative discriminant gives a conjugate pair.  A discriminant at
    rounding level (relative 1e-14, either sign) is treated as zero so
    perfect squares stay exactly repeated.
    """
    if not (math.isfinite(n_over_m) and math.isfinite(c0_over_m)):
        raise ValueError("biquadratic coefficients must be finite")
    disc = n_over_m * n_over_m - 4.0 * c0_over_m
    if abs(disc) <= 1e-14 * max(n_over_m * n_over_m, 4.0 * abs(c0_over_m)):
        disc = 0.0
    half = 0.5 * n_over_m
    if disc >= 0:
        root = 0.5 * math.sqrt(disc)
        # avoid cancellation in the smaller-magnitude root
        if half >= 0:
            big = half + root
            small = c0_over_m / big if big != 0 else half - root
            u_plus, u_minus = big, small
        else:
            big = half - root
            small = c0_over_m / big
            u_plus, u_minus = small, big
        return BiquadraticRoots(complex(u_plus), complex(u_minus), disc)
    root = 0.5j * math.sqrt(-disc)
    return BiquadraticRoots(half + root, half - root, disc)


def _quadratic(b: complex, c: complex) -> tuple[complex, complex]:
    # roots of x^2 + b x + c, cancellation-free
    sq = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * sq).real < 0:
        sq = -sq
    q = -0.5 * (b + sq)
    if q == 0:
        return 0j, 0j
    return q, c / q


def _cubic_roots(a: float, b: float, c: float) -> list[complex]:
    """All roots of ``y**3 + a y**2 + b y + c`` (Cardano, Newton-polished)."""
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = cmath.sqrt((0.5 * q) ** 2 + (p / 3.0) ** 3)
    w = -0.5 * q + disc
    w_alt = -0.5 * q - disc
    if abs(w_alt) > abs(w):
        w = w_alt
    if w == 0:
        ts = [0j, 0j, 0j]
    else:
        base = w ** (1.0 / 3.0)
        omega = cmath.exp(2j * math.pi / 3.0)
        ts = []
        for k in range(3):
            s = base * omega**k
            ts.append(s - p / (3.0 * s))
    roots = []
    for t in ts:
        y = t - a / 3.0
        for _ in range(3):
            f = ((y + a) * y + b) * y + c
            df = (3.0 * y + 2.0 * a) * y + b
            if df == 0:
                break
            step = f / df
            y_new = y - step
            if abs(((y_new + a) * y_new + b) * y_new + c) >= abs(f):
                break
            y = y_new
        roots.append(y)
    return roots


def _polish(poly: DepressedQuartic, r: complex, steps: int = 3) -> complex:
    f = poly(r)
    for _ in range(steps):
        df = poly.derivative(r)
        if df == 0 or f == 0:
            break
        trial = r - f / df
        ft = poly(trial)
        if abs(ft) >= abs(f):
            break
        r, f = trial, ft
    return r


def classify_roots(roots, scale: float = 1.0) -> tuple[tuple[complex, ...], RootClass]:
    """Snap near-real roots to the real axis, collapse repeats, classify.

    Returns the cleaned roots and their :class:`RootClass`.
    """
    rs = [complex(r) for r in roots]
    tol_im = [IMAG_TOL * max(scale, abs(r)) for r in rs]
    rs = [complex(r.real, 0.0) if abs(r.imag) <= t else r for r, t in zip(rs, tol_im)]

    # conjugate pairs that are really a split double real root
    complex_idx = [i for i, r in enumerate(rs) if r.imag != 0.0]
    for i in complex_idx:
        for j in complex_idx:
            if j <= i or rs[i].imag == 0.0 or rs[j].imag == 0.0:
                continue
            ri, rj = rs[i], rs[j]
            if abs(ri - rj.conjugate()) <= REPEAT_TOL * max(scale, abs(ri)) and abs(
                ri.imag
            ) <= SPLIT_TOL * max(scale, abs(ri)):
                mid = 0.5 * (ri.real + rj.real)
                rs[i] = rs[j] = complex(mid, 0.0)

    n_real = sum(1 for r in rs if r.imag == 0.0)
    if n_real == 4:
        vals = [r.real for r in rs]
        repeated = False
        for i in range(4):
            for j in range(i + 1, 4):
                if abs(vals[i] - vals[j]) <= REPEAT_TOL * max(scale, abs(vals[i]), abs(vals[j])):
                    mid = 0.5 * (vals[i] + vals[j])
                    vals[i] = vals[j] = mid
                    repeated = True
        rs = [complex(v, 0.0) for v in vals]
        cls = RootClass.REAL_WITH_REPEATS if repeated else RootClass.ALL_REAL_DISTINCT
    elif n_real == 2:
        cls = RootClass.TWO_REAL_TWO_COMPLEX
    elif n_real == 0:
        cls = RootClass.TWO_COMPLEX_PAIRS
    else:
        # odd count can only come from an inconsistent snap; keep everything complex
        cls = RootClass.TWO_REAL_TWO_COMPLEX
    return tuple(rs), cls


def quartic_roots(q: DepressedQuartic) -> RootQuadruple:
    """All four roots of a depressed quartic.

    Uses the biquadratic formula when ``c1 == 0`` and Ferrari's resolvent
    cubic otherwise; each root then gets Newton polishing.

    Examples
    --------
    >>> sorted(r.real for r in quartic_roots(DepressedQuartic(-5.0, 0.0, 4.0)))
    [-2.0, -1.0, 1.0, 2.0]
    """
    if q.c1 == 0.0:
        bq = biquadratic_roots(-q.c2, q.c0)
        a = cmath.sqrt(bq.u_plus)
        b = cmath.sqrt(bq.u_minus)
        raw = (a, -a, b, -b)
        roots, cls = classify_roots(raw, q.scale)
        return RootQuadruple(roots, cls)

    p, qq, r = q.c2, q.c1, q.c0
    # (x^2 + y)^2 = (2y - p) x^2 - qq x + (y^2 - r) is a perfect square iff
    # y^3 - (p/2) y^2 - r y + (p r / 2 - qq^2 / 8) = 0
    ys = _cubic_roots(-0.5 * p, -r, 0.5 * p * r - qq * qq / 8.0)
    y = max(ys, key=lambda z: abs(2.0 * z - p))
    s = cmath.sqrt(2.0 * y - p)
    t = qq / (2.0 * s)
    r1, r2 = _quadratic(-s, y + t)
    r3, r4 = _quadratic(s, y - t)
    polished = [_polish(q, z) for z in (r1, r2, r3, r4)]
    roots, cls = classify_roots(polished, q.scale)
    return RootQuadruple(roots, cls)


def order_roots(r: RootQuadruple, style: str, leading: float = 1.0) -> RootQuadruple:
    """Label real roots as ``(u1, u2, u3, u4)``.

    ``style="biquadratic"`` gives ``(sqrt(u+), -sqrt(u+), sqrt(u-), -sqrt(u-))``.

    ``style="dsw"`` depends on the sign of the quartic's leading coefficient
    ``M`` in ``U'^2 + M*P(U) = 0``.  With roots sorted ``ra <= rb <= rc <= rd``:

    * ``M > 0``: ``(rd, ra, rc, rb)``, i.e. ``u1 > u3 > u4 > u2``.  The
      motion is confined to ``[ra, rb]`` and the resulting parameter is >= 1.
    * ``M < 0``: ``(ra, rb, rc, rd)``.  The motion is confined to ``[rb, rc]``
      and the resulting parameter lies in ``[0, 1]``.

    Both choices give a real, positive ``m**2``.
    """
    if not r.classification.is_real:
        raise ComplexRootsError(f"cannot order roots that are {r.classification.value}")
    vals = sorted(r.real)
    if style == "biquadratic":
        mags = sorted((abs(v) for v in vals), reverse=True)
        a, b = mags[0], mags[2]
        expected = sorted([a, -a, b, -b])
        tol = REPEAT_TOL * max(1.0, a)
        if any(abs(x - y) > tol for x, y in zip(vals, expected)):
            raise ValueError(f"roots {vals} are not of the form +-a, +-b")
        ordered = (a, -a, b, -b)
        tag = "biquadratic"
    elif style == "dsw":
        if leading == 0:
            raise ValueError("leading coefficient must be nonzero")
        ra, rb, rc, rd = vals
        if leading > 0:
            ordered = (rd, ra, rc, rb)
            tag = "dsw-descending"
        else:
            ordered = (ra, rb, rc, rd)
            tag = "dsw-ascending"
    else:
        raise ValueError(f"unknown ordering style {style!r}")
    return RootQuadruple(tuple(complex(v, 0.0) for v in ordered), r.classification, tag)


def vieta_defects(r: RootQuadruple, q: DepressedQuartic) -> np.ndarray:
    """Differences between the elementary symmetric functions of ``r`` and ``q``."""
    x = np.array(r.roots, dtype=complex)
    e1 = x.sum()
    e2 = sum(x[i] * x[j] for i in range(4) for j in range(i + 1, 4))
    e3 = sum(x[i] * x[j] * x[k] for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    e4 = x.prod()
    return np.array([e1, e2 - q.c2, e3 + q.c1, e4 - q.c0])
