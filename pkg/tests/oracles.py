"""Independent reference computations used only by the tests.

None of these touch the package's own numerics: K comes from adaptive
quadrature, polynomial roots from companion-matrix eigenvalues, and
derivatives from plain finite differences.
"""

import numpy as np
from scipy import integrate


def legendre_K(msq):
    """``int_0^{pi/2} dtheta / sqrt(1 - msq sin^2 theta)`` by adaptive quadrature."""
    val, _ = integrate.quad(
        lambda th: 1.0 / np.sqrt(1.0 - msq * np.sin(th) ** 2),
        0.0,
        0.5 * np.pi,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return val


def companion_roots(c2, c1, c0):
    """Eigenvalues of the companion matrix of ``x^4 + c2 x^2 + c1 x + c0``."""
    comp = np.zeros((4, 4))
    comp[1:, :-1] = np.eye(3)
    comp[:, -1] = [-c0, -c1, -c2, 0.0]
    return np.linalg.eigvals(comp)


def match_roots(a, b):
    """Largest distance after pairing each root of ``a`` with its nearest unused root of ``b``."""
    b = list(np.asarray(b, dtype=complex))
    worst = 0.0
    for z in np.asarray(a, dtype=complex):
        j = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(j)))
    return worst


def central_diff(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def poly_from_roots(roots):
    """Monic coefficients (highest first) of ``prod (x - r)``."""
    return np.poly(np.asarray(roots, dtype=complex))
