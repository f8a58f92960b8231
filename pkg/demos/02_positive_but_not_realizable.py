"""
A system that passes the frequency test but is not realizable
=============================================================

The determinant condition on the imaginary axis is necessary only. The
bundled ``example2`` system satisfies it everywhere, yet the stable invariant
subspace of its Hamiltonian matrix has a singular top block, so no Riccati
solution of the required kind exists.
"""

import numpy as np
from qreal import load_fixture, sweep, check_positivity, solve_nsare, analyze
from qreal.errors import SingularX1

sys = load_fixture("example2")

# The determinant stays just above one on the whole default grid.
sw = sweep(sys)
print("grid points", sw.omegas.size, "smallest det", sw.min_real)
print(check_positivity(sw))

# The Riccati solver gives up with a precise reason.
try:
    solve_nsare(sys)
except SingularX1 as exc:
    print("SingularX1:", exc)
    print("sigma ratio", exc.ratio)

# The end-to-end analysis reaches the same verdict.
rep = analyze(sys, label="example2")
print(rep.verdict, rep.causes)

# For comparison, the state matrix is not even stable.
print("eigenvalues of A", np.round(np.linalg.eigvals(sys.a), 4))
