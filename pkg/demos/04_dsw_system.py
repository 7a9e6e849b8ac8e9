"""Drinfel'd-Sokolov-Wilson: a quartic with an odd term and a recovered u."""

import numpy as np

from ellipwave import DswParams, construct_dsw, dsw_pair_evaluator
from ellipwave.reductions import is_integrable_dsw
from ellipwave.verify import GridSpec, dsw_coupling_residual, pde_residual_dsw

params = DswParams(p=3, q=2, r=2, s=1, omega=1)
print("integrable coefficients:", is_integrable_dsw(params))

# Pick target roots summing to zero and back out the integration constants
roots = np.array([-2.0, -0.5, 1.0, 1.5])
M = -params.p * (params.r + 2 * params.s) / (12 * params.omega * params.q)
c = np.poly(roots)
N = -M * c[2]
c0 = -(N * params.q * params.omega + params.omega**2) / params.r
c1, c2 = M * c[3], M * c[4]
print(f"c0 = {c0}, c1 = {c1}, c2 = {c2}")

con = construct_dsw(params, c0, c1, c2)
sol = con.solution
print("Ferrari roots :", np.round(sorted(sol.roots), 12), " sum:", sum(sol.roots))
print("ordering      :", con.roots.ordering, "(M < 0)")
print(f"p^2 = {sol.p_sq:.6f}, band = {sol.band}")

pair = dsw_pair_evaluator(sol, params, c0)
x = np.linspace(-3, 3, 7)
u, v = pair(x, 0.0)
print("v(x, 0) :", np.round(v, 5))
print("u(x, 0) :", np.round(u, 5))

grid = GridSpec(-5, 5, 1001)
print("coupled PDE residual:", pde_residual_dsw(pair, params, grid, profile=sol).max_abs)
print("u' coupling residual:", dsw_coupling_residual(sol, params, c0, grid).max_abs)
