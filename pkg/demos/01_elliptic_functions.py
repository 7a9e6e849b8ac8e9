"""Jacobi sn, cn, dn from the AGM, and what happens outside 0 <= m <= 1."""

import numpy as np

from ellipwave.elliptic import complete_K, jacobi_sn, jacobi_sn_general, sn_period

# The complete integral K grows without bound as m -> 1
for m in (0.0, 0.5, 0.9, 0.999999):
    print(f"K({m}) = {complete_K(m):.15f}")

# sn interpolates between sin (m = 0) and tanh (m = 1)
x = np.linspace(-3, 3, 7)
for m in (0.0, 0.5, 1.0):
    print(f"m = {m}: sn =", np.round(jacobi_sn(x, m).sn, 6))

# Pythagorean identities hold to rounding
sn, cn, dn = jacobi_sn(np.linspace(-10, 10, 1001), 0.7)
print("max |sn^2 + cn^2 - 1|   =", np.max(np.abs(sn**2 + cn**2 - 1)))
print("max |dn^2 + m sn^2 - 1| =", np.max(np.abs(dn**2 + 0.7 * sn**2 - 1)))

# A parameter above one is mapped back by the reciprocal-modulus rule;
# sn then stays inside [-1/sqrt(m), 1/sqrt(m)]
m = 9.0
s = jacobi_sn_general(np.linspace(0, sn_period(m), 2001), m).sn
print(f"m = {m}: period {sn_period(m):.6f}, max sn {s.max():.12f} (1/sqrt(m) = {1 / 3:.12f})")

# Negative parameters are real too, with period 4 K(mu) / sqrt(1 - m)
m = -2.0
print(f"m = {m}: period {sn_period(m):.6f}")
