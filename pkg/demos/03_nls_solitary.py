"""Cubic NLS: the periodic family and its solitary limit c0 -> 0."""

import numpy as np

from ellipwave import NlsParams, construct_nls, solitary_limit
from ellipwave.verify import GridSpec, pde_residual_nls

params = NlsParams(sigma=2.0, k1=1.0, k2=1.0, omega=1.0)

# Shrinking c0 stretches the period until the wave becomes a single pulse
for c0 in (0.1, 0.01, 1e-4, 0.0):
    sol = construct_nls(params, c0).solution
    print(f"c0 = {c0:<7g} p^2 = {sol.p_sq:10.6f}  period = {sol.period:10.4f}  {sol.regime.value}")

con = construct_nls(params, 0.0)
pulse = solitary_limit(con.solution)
eta = np.linspace(-10, 10, 2001)
print("amplitude, width    :", pulse.amplitude, pulse.width)
print("closed form vs sn   :", np.max(np.abs(pulse(eta) - con.solution.envelope(eta))))
print("tail at 20 widths   :", abs(pulse(20 * pulse.width)))

wide = GridSpec(-10, 10, 2001)
print("PDE residual (pulse):", pde_residual_nls(con.solution, con.frame, params, wide).max_abs)

# At c0 = N^2 / 4M the two roots merge and only a plane wave remains
ode = con.ode
flat = construct_nls(params, ode.N**2 / (4 * ode.M)).solution
print("plane wave amplitude:", flat.u2, flat.regime.value)
