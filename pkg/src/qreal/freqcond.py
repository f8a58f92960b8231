"""Necessary frequency-response condition ``det(Th - G(jw)^dag Th G(jw)) > 0``."""
from dataclasses import dataclass

import numpy as np

from .errors import HermitianDefect, NearPole
from .jspectral import construct_factor
from .ssmodel import eval_transfer
from .structmat import theta

__all__ = [
    "GridSpec",
    "FrequencySweep",
    "PositivityResult",
    "sweep",
    "check_positivity",
    "inertia_check",
    "det_phi_jw",
    "TOL_POS",
]

TOL_POS = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Logarithmic grid, optionally bracketed by ``w = 0`` and ``w = 1e6``."""

    omega_min: float = 1e-3
    omega_max: float = 1e3
    points: int = 500
    endpoints: bool = True
    omega_high: float = 1e6

    def omegas(self):
        if self.points < 1 or not 0 < self.omega_min <= self.omega_max:
            raise ValueError(f"invalid grid {self}")
        w = np.logspace(np.log10(self.omega_min), np.log10(self.omega_max), self.points)
        if self.endpoints:
            w = np.concatenate([[0.0], w, [self.omega_high]])
        return w


@dataclass(eq=False)
class FrequencySweep:
    omegas: np.ndarray
    det_values: np.ndarray

    def __post_init__(self):
        self.omegas = np.asarray(self.omegas, dtype=float)
        self.det_values = np.asarray(self.det_values, dtype=complex)
        if self.omegas.shape != self.det_values.shape:
            raise ValueError("omegas and det_values differ in length")
        if np.any(np.diff(self.omegas) <= 0):
            raise ValueError("omegas must be strictly increasing")

    @property
    def min_real(self):
        return float(np.min(self.det_values.real))

    @property
    def max_abs_imag(self):
        return float(np.max(np.abs(self.det_values.imag)))

    @property
    def argmin_omega(self):
        return float(self.omegas[np.argmin(self.det_values.real)])


@dataclass(frozen=True)
class PositivityResult:
    holds: bool
    witness_omega: float
    min_real: float

    def __bool__(self):
        return self.holds


def det_phi_jw(sys, omega):
    g = eval_transfer(sys, 1j * omega)
    return complex(np.linalg.det(theta(sys.n_u) - g.conj().T @ theta(sys.n_y) @ g))


def sweep(sys, grid=None):
    """Evaluate the determinant on ``grid`` (a :class:`GridSpec` or array of ``w``)."""
    if grid is None:
        grid = GridSpec()
    omegas = grid.omegas() if isinstance(grid, GridSpec) else np.asarray(grid, dtype=float)
    ev = np.linalg.eigvals(sys.a)
    near_axis = ev[np.abs(ev.real) <= 1e-12 * (1 + np.abs(ev))]
    for w in omegas:
        if near_axis.size and np.min(np.abs(np.abs(near_axis.imag) - w)) <= 1e-12 * (1 + w):
            raise NearPole(f"omega = {w} hits an imaginary-axis pole of G")
    dets = np.array([det_phi_jw(sys, w) for w in omegas])
    return FrequencySweep(omegas=omegas, det_values=dets)


def check_positivity(sw, tol=TOL_POS):
    """True iff every real part exceeds ``tol``; the witness is the minimizing ``w``."""
    return PositivityResult(holds=sw.min_real > tol, witness_omega=sw.argmin_omega,
                            min_real=sw.min_real)


def inertia_check(sys, nsare, omega, factor=None, tol_herm=1e-10):
    """Count positive and negative eigenvalues of ``i N(jw)^dag Th N(jw)``.

    Returns ``(n_plus, n_minus)``; a zero eigenvalue counts in neither.
    """
    if factor is None:
        factor = construct_factor(sys, nsare, check_points=0)
    nj = factor.eval(1j * omega)
    m = 1j * nj.conj().T @ theta(sys.n_u) @ nj
    defect = np.linalg.norm(m - m.conj().T) / (1 + np.linalg.norm(m))
    if defect > tol_herm:
        raise HermitianDefect(f"Hermitian defect {defect:.3e} exceeds {tol_herm:g}")
    ev = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    tiny = 1e-12 * max(1.0, np.max(np.abs(ev)))
    return int(np.sum(ev > tiny)), int(np.sum(ev < -tiny))
