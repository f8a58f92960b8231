"""Physical realizability of strictly proper transfer functions as quantum
linear systems driven only by direct-feedthrough vacuum noise.

The main entry points are :func:`solve_nsare` (skew Riccati solution),
:func:`construct_factor` / :func:`verify_factorization` (J-spectral factor),
:func:`realize_system` (noise matrix and oscillator parameters) and
:func:`sweep` (frequency-domain necessary condition).
"""
from .errors import *  # noqa: F401,F403
from .structmat import (
    make_theta,
    theta,
    make_quadrature_maps,
    skew_canonical_transform,
)
from .ssmodel import (
    QuantumLinearSystem,
    AssumptionReport,
    eval_transfer,
    eval_adjoint,
    check_assumptions,
)
from .riccati import (
    build_hamiltonian,
    solve_nsare,
    nsare_residual,
    solve_lyapunov,
    verify_proof_claims,
)
from .jspectral import PhiJ, phi_j_eval, construct_factor, verify_factorization
from .realize import (
    PhysicalParameters,
    generate_system,
    recover_parameters,
    random_parameters,
    verify_theorem1,
    realize_system,
)
from .freqcond import GridSpec, sweep, check_positivity, inertia_check
from .report import analyze, AnalysisReport
from .sysfile import load_system, load_fixture

__version__ = "0.1.0"
