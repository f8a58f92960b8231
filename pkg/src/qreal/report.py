"""End-to-end analysis of a system and its JSON-serializable report."""
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (
    ImaginaryAxisEigenvalue,
    NotRealizable,
    QrealError,
    SingularX1,
    StableSubspaceDimension,
)
from .freqcond import TOL_POS, GridSpec, check_positivity, sweep
from .jspectral import construct_factor, verify_factorization
from .realize import output_noise_matrix, realize_system
from .riccati import TOL_REL, TOL_SING, TOL_IMAG
from .ssmodel import TOL_GAP, check_assumptions

__all__ = ["Tolerances", "AnalysisReport", "analyze", "REALIZABLE",
           "NOT_REALIZABLE", "ASSUMPTIONS_FAILED", "EXIT_CODES"]

REALIZABLE = "REALIZABLE"
NOT_REALIZABLE = "NOT_REALIZABLE"
ASSUMPTIONS_FAILED = "ASSUMPTIONS_FAILED"
EXIT_CODES = {REALIZABLE: 0, NOT_REALIZABLE: 2, ASSUMPTIONS_FAILED: 3}


@dataclass(frozen=True)
class Tolerances:
    res: float = TOL_REL
    sing: float = TOL_SING
    gap: float = TOL_GAP
    pos: float = TOL_POS
    imag: float = TOL_IMAG


def _mat(m):
    return [[float(v) for v in row] for row in np.asarray(m)]


@dataclass
class AnalysisReport:
    """Plain-data report; every field is JSON-native so it round-trips exactly."""

    verdict: str
    causes: list
    label: str = None
    assumptions: dict = None
    nsare: dict = None
    factorization: dict = None
    realization: dict = None
    frequency: dict = None
    tolerances: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return EXIT_CODES[self.verdict]

    def to_dict(self):
        return asdict(self)

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc):
        return cls(**doc)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def analyze(sys, label=None, tol=None, grid=None):
    """Run the full pipeline and return an :class:`AnalysisReport`.

    Order: assumptions, Riccati solution, realization certificate,
    factorization checks (only when A is Hurwitz and the spectra of A and H
    are disjoint), frequency sweep. The sweep runs whenever A has no
    imaginary-axis eigenvalues, including for non-realizable systems.
    """
    tol = tol or Tolerances()
    causes = []
    rep = check_assumptions(sys, tol_gap=tol.gap, tol_imag=tol.imag)
    out = AnalysisReport(verdict=REALIZABLE, causes=causes, label=label,
                         assumptions=asdict(rep), tolerances=asdict(tol))

    try:
        out.frequency = _frequency(sys, tol, grid)
    except QrealError as exc:
        out.frequency = {"error": f"{type(exc).__name__}: {exc}"}

    if not rep.minimal:
        causes.append("NotMinimal: " + "; ".join(rep.failures()))
        out.verdict = ASSUMPTIONS_FAILED
        return out

    try:
        cert = realize_system(sys, tol_imag=tol.imag, tol_sing=tol.sing, tol_rel=tol.res)
    except NotRealizable as exc:
        cause = exc.cause
        if isinstance(cause, (ImaginaryAxisEigenvalue, StableSubspaceDimension)):
            out.verdict = ASSUMPTIONS_FAILED
            causes.append(f"{type(cause).__name__}: {cause}")
            return out
        out.verdict = NOT_REALIZABLE
        if isinstance(cause, SingularX1):
            causes.append(f"SingularX1: {cause}")
        elif isinstance(cause, QrealError):
            causes.append(f"{type(cause).__name__}: {cause}")
        else:
            causes.append("NsareRejected: " + str(exc))
            out.nsare = _nsare_dict(cause)
        return out

    out.nsare = _nsare_dict(cert.nsare)
    out.realization = {
        "accepted": bool(cert.accepted),
        "theorem1_residual_1": cert.theorem1_residual_1,
        "theorem1_residual_2": cert.theorem1_residual_2,
        "tolerance": float(cert.tolerance),
        "transform": _mat(cert.transform),
        "b_v_canonical": _mat(cert.b_v),
        "b_v_original": _mat(cert.b_v_original),
        "b_v_formula_original_c": _mat(output_noise_matrix(sys)),
        "r": _mat(cert.params.r) if cert.params is not None else None,
        "lambda_real": _mat(cert.params.lam.real) if cert.params is not None else None,
        "lambda_imag": _mat(cert.params.lam.imag) if cert.params is not None else None,
        "parameter_residual": (float(cert.params.consistency_residual)
                               if cert.params is not None else None),
    }
    if not cert.accepted:
        out.verdict = NOT_REALIZABLE
        causes.append("RealizabilityResidual: realization equations not satisfied")
        return out

    if not (rep.hurwitz and rep.disjoint_spectra):
        out.verdict = ASSUMPTIONS_FAILED
        causes.append("Riccati solution exists, but the J-spectral factorization "
                      "cannot be certified: " + "; ".join(rep.failures()))
        return out

    try:
        factor = construct_factor(sys, cert.nsare)
        fr = verify_factorization(sys, factor, tol_gap=tol.gap)
        out.factorization = {k: v for k, v in asdict(fr).items()}
        out.factorization["passed"] = bool(fr.passed)
        if not fr.passed:
            out.verdict = NOT_REALIZABLE
            causes.append("FactorizationCheckFailed")
    except QrealError as exc:
        out.verdict = NOT_REALIZABLE
        causes.append(f"{type(exc).__name__}: {exc}")

    freq = out.frequency or {}
    if not freq.get("holds", False):
        out.verdict = NOT_REALIZABLE
        causes.append("FrequencyConditionViolated")
    return out


def _nsare_dict(sol):
    return {
        "accepted": bool(sol.accepted),
        "x": _mat(sol.x),
        "residual": float(sol.residual),
        "skew_defect": float(sol.skew_defect),
        "sigma_min_ratio": float(sol.sigma_min_ratio),
        "subspace_condition": float(sol.subspace_condition),
    }


def _frequency(sys, tol, grid):
    sw = sweep(sys, grid if grid is not None else GridSpec())
    pos = check_positivity(sw, tol.pos)
    return {
        "points": int(sw.omegas.size),
        "min_real": sw.min_real,
        "max_abs_imag": sw.max_abs_imag,
        "witness_omega": pos.witness_omega,
        "holds": bool(pos.holds),
    }
