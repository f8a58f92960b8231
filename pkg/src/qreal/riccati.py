"""Invariant-subspace solution of the skew Riccati equation

    A^T X + X A - X B_u Th_u B_u^T X + C^T Th_y C = 0

together with the Lyapunov solves that split a solution into a stable
Lyapunov part ``L`` and a factor-dependent part ``Y = X - L``.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (
    ImaginaryAxisEigenvalue,
    NonHurwitz,
    SingularX1,
    StableSubspaceDimension,
)
from .ssmodel import TOL_HURWITZ, eval_transfer, hamiltonian
from .structmat import theta

__all__ = [
    "HamiltonianMatrix",
    "NsareSolution",
    "ProofClaimsReport",
    "build_hamiltonian",
    "solve_nsare",
    "stable_subspace",
    "x_from_subspace",
    "nsare_residual",
    "solve_lyapunov",
    "verify_proof_claims",
]

TOL_IMAG = 1e-8
TOL_SING = 1e-8
TOL_REL = 1e-8


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    h: np.ndarray

    @property
    def eigenvalues(self):
        return np.linalg.eigvals(self.h)


@dataclass(eq=False)
class NsareSolution:
    x: np.ndarray
    residual: float
    skew_defect: float
    sigma_min_ratio: float
    subspace_condition: float
    tol_rel: float = TOL_REL
    tol_sing: float = TOL_SING
    eigenvalues: np.ndarray = field(default=None, repr=False)

    @property
    def tol_res(self):
        return self.tol_rel * (1.0 + np.linalg.norm(self.x, "fro") ** 2)

    @property
    def tol_skew(self):
        return self.tol_rel * (1.0 + np.linalg.norm(self.x, "fro"))

    @property
    def accepted(self):
        return (self.residual <= self.tol_res
                and self.skew_defect <= self.tol_skew
                and self.sigma_min_ratio >= self.tol_sing)


def build_hamiltonian(sys):
    return HamiltonianMatrix(hamiltonian(sys))


def nsare_residual(sys, x):
    """Frobenius norm of the Riccati left-hand side at ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (sys.n, sys.n):
        raise ValueError(f"x must be {sys.n}x{sys.n}, got {x.shape}")
    a, b, c = sys.a, sys.b_u, sys.c
    r = (a.T @ x + x @ a - x @ b @ theta(sys.n_u) @ b.T @ x
         + c.T @ theta(sys.n_y) @ c)
    return float(np.linalg.norm(r, "fro"))


def stable_subspace(h, n, tol_imag=TOL_IMAG):
    """Orthonormal basis ``[X1; X2]`` of the stable invariant subspace of ``h``.

    Uses an ordered real Schur form with the left-half-plane block leading.
    """
    ev = np.linalg.eigvals(h)
    on_axis = np.abs(ev.real) <= tol_imag
    if np.any(on_axis):
        raise ImaginaryAxisEigenvalue(
            f"H has eigenvalues on the imaginary axis: {ev[on_axis]}")
    _, z, sdim = sla.schur(h, output="real", sort="lhp")
    if sdim != n:
        raise StableSubspaceDimension(f"stable subspace has dimension {sdim}, expected {n}")
    return z[:, :n], ev


def x_from_subspace(v, tol_sing=TOL_SING):
    """Form ``X2 X1^{-1}`` from a basis ``v = [X1; X2]``.

    Returns ``(X, cond(X1))``. Raises :class:`SingularX1` when
    ``sigma_min(X1) / sigma_max(X1) < tol_sing``.
    """
    n = v.shape[1]
    x1, x2 = v[:n], v[n:]
    sv = np.linalg.svd(x1, compute_uv=False)
    ratio = sv[-1] / sv[0] if sv[0] > 0 else 0.0
    if ratio < tol_sing:
        raise SingularX1(
            f"X1 is singular (sigma_min/sigma_max = {ratio:.3e}); "
            "the Riccati equation has no solution", ratio=float(ratio))
    # X = X2 X1^{-1}  <=>  X1^T X^T = X2^T
    x = np.linalg.solve(x1.T, x2.T).T
    return x, 1.0 / ratio


def solve_nsare(sys, tol_imag=TOL_IMAG, tol_sing=TOL_SING, tol_rel=TOL_REL):
    """Solve the skew Riccati equation from the stable subspace of ``H``.

    The returned ``X`` is the skew part of ``X2 X1^{-1}``; the discarded
    symmetric part is reported as ``skew_defect`` rather than hidden.
    Standing assumptions are not enforced here; a non-Hurwitz ``A`` is fine
    as long as ``H`` has no imaginary-axis eigenvalues.

    Raises
    ------
    ImaginaryAxisEigenvalue, StableSubspaceDimension, SingularX1
    """
    h = hamiltonian(sys)
    v, ev = stable_subspace(h, sys.n, tol_imag)
    x_raw, cond = x_from_subspace(v, tol_sing)
    x = 0.5 * (x_raw - x_raw.T)
    sv = np.linalg.svd(x, compute_uv=False)
    return NsareSolution(
        x=x,
        residual=nsare_residual(sys, x),
        skew_defect=float(np.linalg.norm(x_raw + x_raw.T, "fro")),
        sigma_min_ratio=float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0,
        subspace_condition=float(cond),
        tol_rel=tol_rel,
        tol_sing=tol_sing,
        eigenvalues=ev,
    )


def solve_lyapunov(a_mat, q, tol_hurwitz=TOL_HURWITZ):
    """Solve ``a^T L + L a + q = 0`` for Hurwitz ``a`` (Bartels-Stewart).

    A skew-symmetric ``q`` yields a skew-symmetric ``L`` and a symmetric
    ``q`` a symmetric one, since the solution is unique.
    """
    a_mat = np.asarray(a_mat, dtype=float)
    q = np.asarray(q, dtype=float)
    abscissa = np.max(np.linalg.eigvals(a_mat).real)
    if abscissa >= -tol_hurwitz:
        raise NonHurwitz(f"spectral abscissa {abscissa:.3e} is not negative")
    # scipy solves a X + X a^H = q
    return sla.solve_continuous_lyapunov(a_mat.T, -q)


@dataclass
class ProofClaimsReport:
    l_skew_defect: float
    y_skew_defect: float
    lyap_y_residual: float
    phi_split_residual: float
    l: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    def max_residual(self):
        return max(self.l_skew_defect, self.y_skew_defect,
                   self.lyap_y_residual, self.phi_split_residual)


def _default_points(sys, count=12, seed=0):
    rng = np.random.default_rng(seed)
    poles = np.concatenate([np.linalg.eigvals(sys.a), -np.linalg.eigvals(sys.a)])
    pts = []
    while len(pts) < count:
        s = complex(rng.uniform(-5, 5), rng.uniform(-10, 10))
        if np.min(np.abs(poles - s)) > 1e-2:
            pts.append(s)
    return pts


def verify_proof_claims(sys, nsare, points=None):
    """Numerically check the Lyapunov decomposition behind the factorization.

    ``L`` solves ``A^T L + L A + C^T Th C = 0``; ``Y = X - L`` must be skew and
    solve ``A^T Y + Y A + N_A^T Th N_A = 0`` with ``N_A = Th B_u^T X``; and
    ``Phi_J(s) = Th - B^T(-sI - A^T)^{-1} L B - B^T L (sI - A)^{-1} B``.
    All four quantities are returned as Frobenius/max-norm residuals.
    """
    if not nsare.accepted:
        raise ValueError("Riccati solution was not accepted")
    a, b, c, x = sys.a, sys.b_u, sys.c, nsare.x
    tu, ty = theta(sys.n_u), theta(sys.n_y)
    lmat = solve_lyapunov(a, c.T @ ty @ c)
    y = x - lmat
    n_a = tu @ b.T @ x
    lyap_y = a.T @ y + y @ a + n_a.T @ tu @ n_a

    if points is None:
        points = _default_points(sys)
    eye = np.eye(sys.n)
    split = 0.0
    for s in points:
        g = eval_transfer(sys, s)
        g_adj = eval_transfer(sys, -s).T
        phi = tu - g_adj @ ty @ g
        anti = b.T @ np.linalg.solve(-s * eye - a.T, lmat @ b)
        stab = b.T @ lmat @ np.linalg.solve(s * eye - a, b)
        split = max(split, float(np.max(np.abs(phi - (tu - anti - stab)))))

    return ProofClaimsReport(
        l_skew_defect=float(np.linalg.norm(lmat + lmat.T, "fro")),
        y_skew_defect=float(np.linalg.norm(y + y.T, "fro")),
        lyap_y_residual=float(np.linalg.norm(lyap_y, "fro")),
        phi_split_residual=split,
        l=lmat,
        y=y,
    )
