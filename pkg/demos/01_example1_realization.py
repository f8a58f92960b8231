"""
Realizing a system with feedthrough noise only
==============================================

The bundled ``example1`` system is a strictly proper 2x2 transfer function
with four states. We solve the skew Riccati equation, move to coordinates in
which the solution becomes the canonical structure matrix, and read off the
noise matrix together with the oscillator parameters.
"""

import numpy as np
from qreal import load_fixture, solve_nsare, realize_system, theta

np.set_printoptions(precision=4, suppress=True)
sys = load_fixture("example1")

# The Riccati solution is real and skew-symmetric.
sol = solve_nsare(sys)
print("X =\n", sol.x)
print("residual", sol.residual, "accepted", sol.accepted)

# The certificate contains T with T^T X T = Th and the system in the new
# coordinates. There the noise matrix is simply Th C^T diag(J).
cert = realize_system(sys)
print("T^T X T =\n", cert.transform.T @ sol.x @ cert.transform)
print("B_v (canonical coordinates) =\n", cert.b_v)
print("realizability residuals", cert.theorem1_residual_1, cert.theorem1_residual_2)

# The same system as an open oscillator: 1/2 x^T R x and coupling L = Lambda x.
print("R =\n", cert.params.r)
print("Lambda =\n", cert.params.lam)

# Sanity check: the new state matrix still has the same poles.
print(np.sort_complex(np.linalg.eigvals(cert.sys_canonical.a)))
print(np.sort_complex(np.linalg.eigvals(sys.a)))
assert np.allclose(cert.transform.T @ sol.x @ cert.transform, theta(4))
