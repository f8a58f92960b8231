"""State-space model, transfer-function evaluation and standing assumptions."""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NearPole
from .structmat import theta

__all__ = [
    "QuantumLinearSystem",
    "AssumptionReport",
    "TOL_HURWITZ",
    "TOL_GAP",
    "eval_transfer",
    "eval_adjoint",
    "check_assumptions",
    "controllability_matrix",
    "numerical_rank",
    "spectral_pairing_defect",
    "hamiltonian",
]

TOL_HURWITZ = 1e-9
TOL_GAP = 1e-7
TOL_NEAR_POLE = 1e-12
TOL_PAIRING = 1e-8


@dataclass(frozen=True, eq=False)
class QuantumLinearSystem:
    """Minimal realization ``G(s) = C (sI - A)^{-1} B_u`` with even dimensions.

    Arrays are copied, cast to float and made read-only on construction.
    """

    a: np.ndarray
    b_u: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        a, b, c = (np.array(m, dtype=float, ndmin=2) for m in (self.a, self.b_u, self.c))
        n = a.shape[0]
        if a.shape != (n, n):
            raise DimensionError(f"A must be square, got {a.shape}")
        if b.shape[0] != n or c.shape[1] != n:
            raise DimensionError(
                f"inconsistent shapes A{a.shape}, B_u{b.shape}, C{c.shape}")
        for name, d in (("n", n), ("n_u", b.shape[1]), ("n_y", c.shape[0])):
            if d < 2 or d % 2:
                raise DimensionError(f"{name} must be even and positive, got {d}")
        for m in (a, b, c):
            if not np.all(np.isfinite(m)):
                raise DimensionError("system matrices must be finite")
            m.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b_u", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return self.a.shape[0]

    @property
    def n_u(self):
        return self.b_u.shape[1]

    @property
    def n_y(self):
        return self.c.shape[0]

    def __repr__(self):
        return f"QuantumLinearSystem(n={self.n}, n_u={self.n_u}, n_y={self.n_y})"


@dataclass
class AssumptionReport:
    hurwitz: bool
    spectral_abscissa: float
    minimal: bool
    controllability_rank: int
    observability_rank: int
    disjoint_spectra: bool
    min_eigenvalue_gap: float
    hamiltonian_symmetric: bool
    pairing_defect: float
    imaginary_axis_free: bool

    @property
    def all_hold(self):
        return self.hurwitz and self.minimal and self.disjoint_spectra

    def failures(self):
        out = []
        if not self.minimal:
            out.append("realization is not minimal")
        if not self.hurwitz:
            out.append(f"A is not Hurwitz (spectral abscissa {self.spectral_abscissa:.4g})")
        if not self.disjoint_spectra:
            out.append(f"A and H share an eigenvalue (gap {self.min_eigenvalue_gap:.3g})")
        return out


def _resolvent_solve(a, s, rhs):
    n = a.shape[0]
    ev = np.linalg.eigvals(a)
    scale = 1.0 + abs(s) + np.linalg.norm(a, 2)
    if np.min(np.abs(ev - s)) <= TOL_NEAR_POLE * scale:
        raise NearPole(f"s = {s} is within {TOL_NEAR_POLE:g} (relative) of spec(A)")
    return np.linalg.solve(s * np.eye(n) - a, rhs)


def eval_transfer(sys, s):
    """Evaluate ``G(s) = C (sI - A)^{-1} B_u`` by a linear solve."""
    return sys.c @ _resolvent_solve(sys.a, complex(s), sys.b_u.astype(complex))


def eval_adjoint(sys, s):
    """Evaluate the para-Hermitian adjoint ``G~(s) = G(-s)^T``."""
    return eval_transfer(sys, -complex(s)).T


def numerical_rank(m, scale_dims=None):
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    k = max(m.shape) if scale_dims is None else scale_dims
    return int(np.sum(sv > sv[0] * k * 1e-12))


def controllability_matrix(a, b):
    n = a.shape[0]
    blocks = [b]
    for _ in range(n - 1):
        blocks.append(a @ blocks[-1])
    return np.hstack(blocks)


def hamiltonian(sys):
    """Block matrix ``[[A, -B Th B^T], [-C^T Th C, -A^T]]``."""
    tu, ty = theta(sys.n_u), theta(sys.n_y)
    return np.block([
        [sys.a, -sys.b_u @ tu @ sys.b_u.T],
        [-sys.c.T @ ty @ sys.c, -sys.a.T],
    ])


def spectral_pairing_defect(eigs):
    """Largest relative distance from ``-conj(lam)`` to the spectrum, over ``lam``."""
    eigs = np.asarray(eigs)
    mirror = -np.conj(eigs)
    d = np.abs(eigs[:, None] - mirror[None, :]).min(axis=1)
    return float(np.max(d / (1.0 + np.abs(eigs))))


def check_assumptions(sys, tol_hurwitz=TOL_HURWITZ, tol_gap=TOL_GAP, tol_imag=1e-8):
    n = sys.n
    ev_a = np.linalg.eigvals(sys.a)
    abscissa = float(np.max(ev_a.real))
    k = max(n, sys.n_u, sys.n_y)
    rc = numerical_rank(controllability_matrix(sys.a, sys.b_u), k)
    ro = numerical_rank(controllability_matrix(sys.a.T, sys.c.T), k)
    ev_h = np.linalg.eigvals(hamiltonian(sys))
    gap = float(np.min(np.abs(ev_a[:, None] - ev_h[None, :])))
    pairing = spectral_pairing_defect(ev_h)
    return AssumptionReport(
        hurwitz=abscissa < -tol_hurwitz,
        spectral_abscissa=abscissa,
        minimal=(rc == n and ro == n),
        controllability_rank=rc,
        observability_rank=ro,
        disjoint_spectra=gap > tol_gap,
        min_eigenvalue_gap=gap,
        hamiltonian_symmetric=pairing <= TOL_PAIRING,
        pairing_defect=pairing,
        imaginary_axis_free=bool(np.all(np.abs(ev_h.real) > tol_imag)),
    )
