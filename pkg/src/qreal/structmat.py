"""Canonical skew-symmetric structures and quadrature permutation maps.

Quadrature vectors are ordered ``(q1, p1, q2, p2, ...)`` throughout, so the
canonical commutation matrix is block diagonal in 2x2 blocks.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DimensionError, SingularStructure, StructureViolation

__all__ = [
    "J2",
    "CanonicalStructure",
    "QuadratureMaps",
    "make_theta",
    "theta",
    "make_quadrature_maps",
    "permutation_matrix",
    "skew_canonical_transform",
]

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
M_BLOCK = 0.5 * np.array([[1.0, 1.0j], [1.0, -1.0j]])


@dataclass(frozen=True)
class CanonicalStructure:
    m: int
    theta: np.ndarray


@dataclass(frozen=True)
class QuadratureMaps:
    n_w: int
    n_y: int
    gamma: np.ndarray
    m_block: np.ndarray
    sigma: np.ndarray
    perm: np.ndarray


def _check_even(m, name="m"):
    if int(m) != m or m < 2 or m % 2:
        raise DimensionError(f"{name} must be an even integer >= 2, got {m!r}")
    return int(m)


def theta(m):
    """Return the ``m x m`` canonical matrix ``diag(J, ..., J)``."""
    m = _check_even(m)
    return np.kron(np.eye(m // 2), J2)


def make_theta(m):
    return CanonicalStructure(m=_check_even(m), theta=theta(m))


def permutation_matrix(n_modes):
    """Permutation ``P`` sending ``(a1, ..., a2N)`` to ``(a1, a3, ..., a2, a4, ...)``."""
    if n_modes < 1:
        raise DimensionError("number of modes must be positive")
    p = np.zeros((2 * n_modes, 2 * n_modes))
    idx = np.arange(n_modes)
    p[idx, 2 * idx] = 1.0
    p[n_modes + idx, 2 * idx + 1] = 1.0
    return p


def make_quadrature_maps(n_w, n_y):
    """Build ``(Gamma, M, Sigma, P)`` for ``n_w`` field modes, ``n_y`` of them observed.

    Both arguments count modes (half the number of quadratures).
    """
    if int(n_w) != n_w or int(n_y) != n_y or not 1 <= n_y <= n_w:
        raise DimensionError(f"need 1 <= N_y <= N_w, got N_w={n_w}, N_y={n_y}")
    perm = permutation_matrix(n_w)
    gamma = perm @ np.kron(np.eye(n_w), M_BLOCK)
    sigma = np.hstack([np.eye(n_y), np.zeros((n_y, n_w - n_y))])
    return QuadratureMaps(n_w=int(n_w), n_y=int(n_y), gamma=gamma,
                          m_block=M_BLOCK.copy(), sigma=sigma, perm=perm)


def skew_canonical_transform(x, tol=1e-10, return_defect=False):
    """Find a real ``T`` with ``T.T @ x @ T = theta(n)``.

    ``x`` is first projected onto its skew part; the projection defect
    (relative to the largest singular value) must not exceed ``tol``.
    The orthogonal factor comes from a real Schur decomposition, which for a
    skew matrix is block diagonal with blocks ``[[0, mu], [-mu, 0]]``; each
    block is then flipped to ``mu > 0`` and scaled by ``1/sqrt(mu)``.

    Parameters
    ----------
    x : (n, n) array_like
        Real, nonsingular, (numerically) skew-symmetric matrix.
    tol : float
        Relative tolerance for the skewness defect and for singularity.
    return_defect : bool
        Also return the relative skewness defect of the input.

    Returns
    -------
    T : (n, n) ndarray
    defect : float, optional
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] % 2:
        raise DimensionError(f"x must be square of even size, got {x.shape}")
    n = x.shape[0]
    smax = np.linalg.norm(x, 2)
    if smax == 0.0:
        raise SingularStructure("x is the zero matrix")
    xs = 0.5 * (x - x.T)
    defect = np.linalg.norm(x - xs, "fro") / smax
    if defect > tol:
        raise StructureViolation(f"x is not skew-symmetric (relative defect {defect:.3e})")
    svals = np.linalg.svd(xs, compute_uv=False)
    if svals[-1] / svals[0] <= tol:
        raise SingularStructure(f"x is singular (sigma_min/sigma_max = {svals[-1] / svals[0]:.3e})")

    s, q = sla.schur(xs, output="real")
    t = q.copy()
    i = 0
    while i < n:
        if i == n - 1 or s[i + 1, i] == 0.0:
            # a 1x1 block means a zero eigenvalue, excluded by the rank test
            raise SingularStructure("real Schur form has a 1x1 block")
        mu = 0.5 * (s[i, i + 1] - s[i + 1, i])
        if mu < 0:
            t[:, [i, i + 1]] = t[:, [i + 1, i]]
        t[:, i:i + 2] /= np.sqrt(abs(mu))
        i += 2
    if return_defect:
        return t, defect
    return t
