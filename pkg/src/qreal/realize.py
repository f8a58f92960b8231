"""Physical realizations: canonical coordinates, noise matrix, and (R, Lambda).

Field ordering convention
-------------------------
For a system generated from ``(R, Lambda)`` with ``n_w`` field quadratures and
``D = [I 0]``, the first ``n_y`` columns of ``B`` are the direct-feedthrough
noise ``B_v`` and the remaining ``n_w - n_y`` columns are the signal input
``B_u``. Accordingly ``B = [B_v  B_u]`` whenever a full input matrix is
assembled or decomposed.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (
    AssumptionError,
    DimensionError,
    InconsistentSystem,
    NonRealOutput,
    NotRealizable,
    QrealError,
)
from .riccati import TOL_REL, TOL_SING, TOL_IMAG, solve_nsare
from .ssmodel import QuantumLinearSystem, check_assumptions
from .structmat import make_quadrature_maps, skew_canonical_transform, theta

__all__ = [
    "PhysicalParameters",
    "RealizationCertificate",
    "generate_system",
    "recover_parameters",
    "random_parameters",
    "verify_theorem1",
    "output_noise_matrix",
    "realize_system",
    "split_input",
]


@dataclass(eq=False)
class PhysicalParameters:
    """Quadratic Hamiltonian ``1/2 x^T R x`` and coupling ``L = Lambda x``."""

    r: np.ndarray
    lam: np.ndarray
    consistency_residual: float = 0.0

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        self.r = 0.5 * (r + r.T)
        self.lam = np.atleast_2d(np.asarray(self.lam, dtype=complex))
        if self.r.shape[0] != self.r.shape[1] or self.lam.shape[1] != self.r.shape[0]:
            raise DimensionError(f"R{self.r.shape} and Lambda{self.lam.shape} are incompatible")

    @property
    def n(self):
        return self.r.shape[0]

    @property
    def n_w(self):
        return 2 * self.lam.shape[0]


def random_parameters(rng, n, n_w, passive=True, scale=1.0):
    """Draw random ``(R, Lambda)``.

    With ``passive=True`` ``R`` is positive definite and ``Lambda`` couples only
    annihilation operators ``a_k = (q_k + i p_k) / 2``, which gives a Hurwitz
    ``A`` for generic draws. Otherwise both are unstructured Gaussian.
    """
    if n % 2 or n_w % 2:
        raise DimensionError("n and n_w must be even")
    q = rng.normal(size=(n, n)) * scale
    if passive:
        r = q @ q.T / n + 0.1 * np.eye(n)
        k = rng.normal(size=(n_w // 2, n // 2)) + 1j * rng.normal(size=(n_w // 2, n // 2))
        annihilation = np.kron(np.eye(n // 2), np.array([[0.5, 0.5j]]))
        lam = k @ annihilation
    else:
        r = 0.5 * (q + q.T)
        lam = rng.normal(size=(n_w // 2, n)) + 1j * rng.normal(size=(n_w // 2, n))
    return PhysicalParameters(r=r, lam=lam)


def generate_system(params, n_y, tol_imag=1e-10):
    """Assemble ``(A, B, C, D)`` of the open oscillator with parameters ``params``.

    Returns real arrays; the imaginary parts left over from the complex
    assembly must vanish, otherwise :class:`NonRealOutput` is raised.
    """
    r, lam = params.r, params.lam
    n, n_w = params.n, params.n_w
    if n % 2 or n_y % 2 or not 2 <= n_y <= n_w:
        raise DimensionError(f"need even n and 2 <= n_y <= n_w, got n={n}, n_y={n_y}, n_w={n_w}")
    qm = make_quadrature_maps(n_w // 2, n_y // 2)
    th = theta(n)
    a = 2 * th @ (r + np.imag(lam.conj().T @ lam))
    b = 2j * th @ np.hstack([-lam.conj().T, lam.T]) @ qm.gamma
    sig = sla.block_diag(qm.sigma, qm.sigma)
    p_y = make_quadrature_maps(n_y // 2, n_y // 2).perm
    c = p_y.T @ sig @ np.vstack([lam + lam.conj(), -1j * lam + 1j * lam.conj()])
    d = np.hstack([np.eye(n_y), np.zeros((n_y, n_w - n_y))])
    a, b, c = (np.asarray(m, dtype=complex) for m in (a, b, c))
    worst = max(np.max(np.abs(m.imag)) for m in (a, b, c))
    if worst > tol_imag:
        raise NonRealOutput(f"assembled matrices have imaginary residue {worst:.3e}")
    return a.real.copy(), b.real.copy(), c.real.copy(), d


def recover_parameters(a, b, theta_n=None, tol=1e-8):
    """Invert the ``(R, Lambda) -> (A, B)`` map.

    ``[-Lambda^dag  Lambda^T] = i Th B Gamma^dag`` (using ``Gamma Gamma^dag = I/2``),
    and ``R`` is the symmetric part of ``(2 Th)^{-1} A``. The consistency
    residual collects the skew-part mismatch with ``Im(Lambda^dag Lambda)`` and
    the mismatch between the two blocks that both encode ``Lambda``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = a.shape[0]
    th = theta(n) if theta_n is None else np.asarray(theta_n, dtype=float)
    n_w = b.shape[1]
    if b.shape[0] != n or n_w % 2:
        raise DimensionError(f"B must be {n} x (even), got {b.shape}")
    qm = make_quadrature_maps(n_w // 2, 1)
    blocks = 1j * th @ b @ qm.gamma.conj().T
    minus_lam_dag, lam_t = blocks[:, : n_w // 2], blocks[:, n_w // 2:]
    lam = lam_t.T
    m = np.linalg.solve(2 * th, a)
    r = 0.5 * (m + m.T)
    res = np.linalg.norm(m - r - np.imag(lam.conj().T @ lam), "fro")
    res += np.linalg.norm(minus_lam_dag + lam.conj().T, "fro")
    params = PhysicalParameters(r=r, lam=lam, consistency_residual=float(res))
    if res > tol:
        raise InconsistentSystem(f"(A, B) is not of oscillator form (residual {res:.3e})")
    return params


def verify_theorem1(a, b_u, b_v, c):
    """Residuals of the two physical-realizability equations.

    ``r1 = |A Th + Th A^T + B_v Th B_v^T + B_u Th B_u^T|_F`` and
    ``r2 = |B_v [I; 0] - Th C^T diag(J)|_F``.
    """
    a, b_u, b_v, c = (np.asarray(m, dtype=float) for m in (a, b_u, b_v, c))
    n = a.shape[0]
    n_y = c.shape[0]
    n_v = b_v.shape[1]
    if (a.shape != (n, n) or b_u.shape[0] != n or b_v.shape[0] != n
            or c.shape[1] != n or n_v < n_y):
        raise DimensionError("inconsistent dimensions in realizability check")
    th = theta(n)
    r1 = a @ th + th @ a.T + b_v @ theta(n_v) @ b_v.T
    if b_u.shape[1]:
        r1 = r1 + b_u @ theta(b_u.shape[1]) @ b_u.T
    sel = np.vstack([np.eye(n_y), np.zeros((n_v - n_y, n_y))])
    r2 = b_v @ sel - th @ c.T @ theta(n_y)
    return float(np.linalg.norm(r1, "fro")), float(np.linalg.norm(r2, "fro"))


def output_noise_matrix(sys):
    """``Th_n C^T diag(J)`` evaluated with the system's own ``C``."""
    return theta(sys.n) @ sys.c.T @ theta(sys.n_y)


def split_input(b, n_y):
    """Split ``B = [B_v B_u]`` into ``(B_u, B_v)``."""
    return b[:, n_y:], b[:, :n_y]


@dataclass(eq=False)
class RealizationCertificate:
    transform: np.ndarray
    sys_canonical: QuantumLinearSystem
    b_v: np.ndarray
    b_v_original: np.ndarray
    theorem1_residual_1: float
    theorem1_residual_2: float
    params: PhysicalParameters
    nsare: object = field(repr=False)
    c_consistency: float = 0.0
    tol_rel: float = TOL_REL

    @property
    def tolerance(self):
        s = self.sys_canonical
        b = np.hstack([s.b_u, self.b_v])
        return self.tol_rel * (1 + np.linalg.norm(s.a, 2) + np.linalg.norm(b, 2) ** 2
                          + np.linalg.norm(s.c, 2) ** 2)

    @property
    def accepted(self):
        tol = self.tolerance
        return self.theorem1_residual_1 <= tol and self.theorem1_residual_2 <= tol


def realize_system(sys, tol_imag=TOL_IMAG, tol_sing=TOL_SING, tol_rel=TOL_REL):
    """Construct a direct-feedthrough physical realization of ``sys``.

    Steps: solve the Riccati equation, pick ``T`` with ``T^T X T = Th``, move
    to ``x = T x'`` coordinates, set ``B_v = Th C'^T diag(J)``, check both
    realizability equations and read off ``(R, Lambda)``.

    Only minimality is required; stability of ``A`` is not needed here.

    Raises
    ------
    AssumptionError
        If the realization is not minimal.
    NotRealizable
        If no suitable Riccati solution exists; ``.cause`` holds the reason.
    """
    report = check_assumptions(sys)
    if not report.minimal:
        raise AssumptionError("realization is not minimal")
    try:
        nsare = solve_nsare(sys, tol_imag=tol_imag, tol_sing=tol_sing, tol_rel=tol_rel)
    except QrealError as exc:
        raise NotRealizable(f"no Riccati solution: {exc}", cause=exc) from exc
    if not nsare.accepted:
        raise NotRealizable(
            "Riccati candidate rejected (residual, skewness or rank threshold)", cause=nsare)

    t = skew_canonical_transform(nsare.x)
    t_inv = np.linalg.inv(t)
    a_c = t_inv @ sys.a @ t
    b_c = t_inv @ sys.b_u
    c_c = sys.c @ t
    canon = QuantumLinearSystem(a_c, b_c, c_c)
    b_v = theta(sys.n) @ c_c.T @ theta(sys.n_y)
    r1, r2 = verify_theorem1(a_c, b_c, b_v, c_c)

    full_b = np.hstack([b_v, b_c])
    try:
        params = recover_parameters(a_c, full_b, tol=np.inf)
        c_gen = generate_system(params, sys.n_y, tol_imag=np.inf)[2]
        c_err = float(np.linalg.norm(c_gen - c_c, "fro"))
    except QrealError:
        params, c_err = None, np.inf
    return RealizationCertificate(
        transform=t,
        sys_canonical=canon,
        b_v=b_v,
        b_v_original=t @ b_v,
        theorem1_residual_1=r1,
        theorem1_residual_2=r2,
        params=params,
        nsare=nsare,
        c_consistency=c_err,
        tol_rel=tol_rel,
    )
