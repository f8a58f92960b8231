"""
Sweeping the determinant condition
==================================

``det(Th - G(jw)^dag Th G(jw))`` must be real and positive for every ``w``
when the system is realizable. We sample it on a log grid and look at where
it dips lowest and how fast it returns to one.
"""

import numpy as np
from qreal import load_fixture, sweep, GridSpec, inertia_check, solve_nsare

sys = load_fixture("example1")

sw = sweep(sys, GridSpec(omega_min=1e-2, omega_max=1e2, points=9, endpoints=False))
for w, det in zip(sw.omegas, sw.det_values):
    print(f"{w:10.4f}  {det.real:.6f}  {det.imag:+.1e}")

# Far above every pole the transfer function vanishes and det -> det(Th) = 1.
print("w = 1e6:", sweep(sys, [1e6]).det_values[0])

# Positivity comes from the inertia of i N(jw)^dag Th N(jw), which is always
# one positive and one negative eigenvalue per field channel.
sol = solve_nsare(sys)
print([inertia_check(sys, sol, w) for w in (0.01, 1.0, 100.0)])
