"""J-spectral factor ``N(s)`` built from a Riccati solution, and its checks."""
from dataclasses import dataclass, field

import numpy as np

from .errors import NotAccepted
from .ssmodel import (
    TOL_GAP,
    eval_transfer,
    hamiltonian,
    numerical_rank,
    controllability_matrix,
)
from .structmat import theta

__all__ = [
    "PhiJ",
    "SpectralFactor",
    "FactorizationReport",
    "phi_j_eval",
    "construct_factor",
    "verify_factorization",
    "default_grid",
    "det_identity_rhs",
]


@dataclass(frozen=True, eq=False)
class PhiJ:
    """``Phi_J(s) = Th_u - G~(s) Th_y G(s)`` for a fixed system."""

    sys: object

    @property
    def theta_u(self):
        return theta(self.sys.n_u)

    @property
    def theta_y(self):
        return theta(self.sys.n_y)

    def __call__(self, s):
        return phi_j_eval(self, s)


def phi_j_eval(phi, s):
    sys = phi.sys if isinstance(phi, PhiJ) else phi
    g = eval_transfer(sys, s)
    g_adj = eval_transfer(sys, -complex(s)).T
    return theta(sys.n_u) - g_adj @ theta(sys.n_y) @ g


@dataclass(frozen=True, eq=False)
class SpectralFactor:
    """``N(s) = I + n_a (sI - a)^{-1} b`` and ``N^{-1}(s) = I - n_a (sI - inv_a)^{-1} b``.

    ``inv_a = a - b @ n_a``.
    """

    a: np.ndarray
    b: np.ndarray
    n_a: np.ndarray
    inv_a: np.ndarray

    @property
    def size(self):
        return self.b.shape[1]

    def __call__(self, s):
        return self.eval(s)

    def eval(self, s):
        n = self.a.shape[0]
        return np.eye(self.size) + self.n_a @ np.linalg.solve(
            complex(s) * np.eye(n) - self.a, self.b.astype(complex))

    def eval_inverse(self, s):
        n = self.a.shape[0]
        return np.eye(self.size) - self.n_a @ np.linalg.solve(
            complex(s) * np.eye(n) - self.inv_a, self.b.astype(complex))

    def eval_adjoint(self, s):
        return self.eval(-complex(s)).T

    @property
    def poles(self):
        return np.linalg.eigvals(self.a)

    @property
    def inverse_poles(self):
        return np.linalg.eigvals(self.inv_a)


def construct_factor(sys, nsare, check_points=20, seed=0):
    """Build ``N(s)`` from an accepted Riccati solution.

    The gain is ``n_a = Th_u B_u^T X``. As a self-check, ``N(s) N^{-1}(s)``
    is compared with the identity at ``check_points`` random points.
    """
    if not nsare.accepted:
        raise NotAccepted(
            f"Riccati solution not accepted (residual {nsare.residual:.3e}, "
            f"skew defect {nsare.skew_defect:.3e}, sigma ratio {nsare.sigma_min_ratio:.3e})")
    n_a = theta(sys.n_u) @ sys.b_u.T @ nsare.x
    factor = SpectralFactor(a=sys.a.copy(), b=sys.b_u.copy(), n_a=n_a,
                            inv_a=sys.a - sys.b_u @ n_a)
    if check_points:
        avoid = np.concatenate([factor.poles, factor.inverse_poles])
        for s in _random_points(check_points, avoid, np.random.default_rng(seed)):
            err = np.max(np.abs(factor.eval(s) @ factor.eval_inverse(s) - np.eye(sys.n_u)))
            if err > 1e-8:
                raise NotAccepted(f"N(s) N^-1(s) != I at s={s} (error {err:.3e})")
    return factor


def _random_points(count, avoid, rng, re_max=10.0, im_max=10.0, margin=1e-2):
    pts = []
    while len(pts) < count:
        s = complex(rng.uniform(-re_max, re_max), rng.uniform(-im_max, im_max))
        if avoid.size == 0 or np.min(np.abs(avoid - s)) > margin * (1 + abs(s)):
            pts.append(s)
    return pts


def default_grid(sys, factor=None, n_axis=40, n_random=20, seed=0):
    """40 log-spaced ``j w`` points on ``[1e-3, 1e3]`` plus 20 random points.

    Random points have ``|Re s| <= 10`` and avoid poles of ``G``, ``G~``
    and (if given) of ``N^{-1}`` and its adjoint.
    """
    ev = np.linalg.eigvals(sys.a)
    avoid = [ev, -ev]
    if factor is not None:
        iv = factor.inverse_poles
        avoid += [iv, -iv]
    avoid = np.concatenate(avoid)
    grid = [1j * w for w in np.logspace(-3, 3, n_axis)]
    grid += _random_points(n_random, avoid, np.random.default_rng(seed))
    return grid


def det_identity_rhs(sys, s):
    """``det(sI - H) / (det(sI + A^T) det(sI - A))``."""
    n = sys.n
    h = hamiltonian(sys)
    num = np.linalg.det(s * np.eye(2 * n) - h)
    den = np.linalg.det(s * np.eye(n) + sys.a.T) * np.linalg.det(s * np.eye(n) - sys.a)
    return num / den


@dataclass
class FactorizationReport:
    d1_max_error: float
    d2_ok: bool
    spectral_abscissa: float
    d3_ok: bool
    min_pole_gap: float
    d4_error: float
    det_identity_max_rel_error: float
    mcmillan_degree_ok: bool
    controllability_rank: int
    observability_rank: int
    tolerances: dict = field(default_factory=dict)

    @property
    def passed(self):
        t = self.tolerances
        return (self.d1_max_error <= t.get("d1", 1e-6)
                and self.d2_ok and self.d3_ok
                and self.d4_error <= t.get("d4", 1e-6)
                and self.det_identity_max_rel_error <= t.get("det", 1e-8)
                and self.mcmillan_degree_ok)


def verify_factorization(sys, factor, grid=None, s_big=1e9, tol_gap=TOL_GAP,
                         tol_d1=1e-6, tol_d4=1e-6, tol_det=1e-8):
    """Check the four factorization conditions and the determinant identity.

    d1: ``max |N~ Th N - Phi_J|`` over ``grid``; d2: ``spec(a)`` in the open
    left half-plane; d3: ``spec(a)`` and ``spec(inv_a)`` separated by more
    than ``tol_gap``; d4: ``|N(s_big) - I|``. The degree check asks for
    ``(a, b)`` controllable and ``(n_a, a)`` observable.
    """
    if grid is None:
        grid = default_grid(sys, factor)
    if len(grid) == 0:
        raise ValueError("grid must be nonempty")
    tu = theta(sys.n_u)
    phi = PhiJ(sys)
    d1 = 0.0
    det_err = 0.0
    for s in grid:
        ph = phi_j_eval(phi, s)
        d1 = max(d1, float(np.max(np.abs(factor.eval_adjoint(s) @ tu @ factor.eval(s) - ph))))
        lhs = np.linalg.det(ph)
        rhs = det_identity_rhs(sys, s)
        det_err = max(det_err, float(abs(lhs - rhs) / (1.0 + abs(lhs))))

    poles = factor.poles
    abscissa = float(np.max(poles.real))
    gap = float(np.min(np.abs(poles[:, None] - factor.inverse_poles[None, :])))
    d4 = float(np.max(np.abs(factor.eval(s_big) - np.eye(sys.n_u))))
    n = sys.n
    k = max(n, sys.n_u)
    rc = numerical_rank(controllability_matrix(factor.a, factor.b), k)
    ro = numerical_rank(controllability_matrix(factor.a.T, factor.n_a.T), k)
    return FactorizationReport(
        d1_max_error=d1,
        d2_ok=abscissa < 0,
        spectral_abscissa=abscissa,
        d3_ok=gap > tol_gap,
        min_pole_gap=gap,
        d4_error=d4,
        det_identity_max_rel_error=det_err,
        mcmillan_degree_ok=(rc == n and ro == n),
        controllability_rank=rc,
        observability_rank=ro,
        tolerances={"d1": tol_d1, "d4": tol_d4, "det": tol_det, "gap": tol_gap},
    )
