"""Eigenvalue system for Codazzi shape operators on eta-Einstein 3-manifolds.

If a spinor with ``nabla_X phi = -1/2 A(X).phi`` exists and ``A`` is Codazzi,
then in a frame ``{e1, e2, xi}`` diagonalizing ``A`` its eigenvalues satisfy

    a1 a2 = (lam + eta)/2,   a1 a3 = a2 a3 = (lam - eta)/2.

No real solution, or no solution that is actually Codazzi, rules out an
isometric immersion into R^4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .compatibility import codazzi_tensor
from .errors import EtaZero
from .frame import FrameGeometry, RicciSplit, eta_einstein_split, ricci_matrix

CASE_TOL = 1e-12
CODAZZI_TOL = 1e-9


class Case(str, Enum):
    LAMBDA_EQUALS_MINUS_ETA = "NoRealSolution_LambdaEqualsMinusEta"
    NEGATIVE_SQUARE = "NoRealSolution_NegativeSquare"
    CANDIDATES = "Candidates"
    LAMBDA_EQUALS_ETA = "Underdetermined_LambdaEqualsEta"
    EINSTEIN = "Einstein_EtaZero"


class Verdict(str, Enum):
    NON_IMMERSIBLE = "NonImmersible"
    INCONCLUSIVE = "Inconclusive"


def solve_shape_candidates(lam: float, eta: float, xi_index: int = 2,
                           tol: float = CASE_TOL) -> tuple[Case, list[np.ndarray]]:
    """Real diagonal solutions of the eigenvalue system, with ``a3`` on ``xi``."""
    if abs(eta) <= tol:
        raise EtaZero("eta-Einstein coefficient vanishes; the system does not apply")
    s = lam + eta
    if abs(s) <= tol:
        return Case.LAMBDA_EQUALS_MINUS_ETA, []
    if s < 0:
        return Case.NEGATIVE_SQUARE, []
    if abs(lam - eta) <= tol:
        # a3 = 0 and a1 a2 = lam: a one-parameter family, not pinned down
        return Case.LAMBDA_EQUALS_ETA, []
    a = np.sqrt(s / 2.0)
    a3 = (lam - eta) / np.sqrt(2.0 * s)
    diag = np.full(3, a)
    diag[xi_index] = a3
    base = np.diag(diag)
    return Case.CANDIDATES, [base, 0.0 - base]


def product_residuals(A, lam: float, eta: float, xi_index: int = 2) -> np.ndarray:
    """Residuals of the three product equations for a diagonal candidate."""
    d = np.diag(np.asarray(A, dtype=float))
    a, b = (k for k in range(3) if k != xi_index)
    c = xi_index
    return np.array([
        d[a] * d[b] - (lam + eta) / 2.0,
        d[b] * d[c] - (lam - eta) / 2.0,
        d[a] * d[c] - (lam - eta) / 2.0,
    ])


def codazzi_max(g: FrameGeometry, A) -> float:
    return max(float(np.linalg.norm(codazzi_tensor(g, A, i, j)))
               for i in range(3) for j in range(i + 1, 3))


@dataclass
class ObstructionResult:
    ricci: np.ndarray
    split: RicciSplit | None
    case_tag: Case
    candidates: list[np.ndarray] = field(default_factory=list)
    codazzi_residuals: list[float] = field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE
    note: str = ""

    def to_json(self) -> dict:
        return {
            "ricci": self.ricci.tolist(),
            "split": None if self.split is None else {
                "lambda": self.split.lam,
                "eta": self.split.eta_einstein,
                "xi_index": self.split.xi_index,
            },
            "case": self.case_tag.value,
            "candidates": [c.tolist() for c in self.candidates],
            "codazzi_residuals": list(self.codazzi_residuals),
            "verdict": self.verdict.value,
            "note": self.note,
        }


def obstruct(g: FrameGeometry, xi_index: int | None = None,
             ricci_tol: float = 1e-10, codazzi_tol: float = CODAZZI_TOL) -> ObstructionResult:
    """Decide whether the eigenvalue system rules out an immersion of ``g`` into R^4.

    Raises ``NotEtaEinstein`` when the Ricci tensor has the wrong shape.
    """
    if xi_index is None:
        xi_index = 2 if g.xi_index is None else g.xi_index
    ric = ricci_matrix(g)
    split = eta_einstein_split(ric, xi_index, ricci_tol)
    try:
        case, cands = solve_shape_candidates(split.lam, split.eta_einstein, xi_index)
    except EtaZero:
        return ObstructionResult(ric, split, Case.EINSTEIN,
                                 note="Einstein metric; the eigenvalue system gives no constraint")
    if case in (Case.LAMBDA_EQUALS_MINUS_ETA, Case.NEGATIVE_SQUARE):
        return ObstructionResult(ric, split, case, verdict=Verdict.NON_IMMERSIBLE,
                                 note="no real solution of the eigenvalue system")
    if case is Case.LAMBDA_EQUALS_ETA:
        return ObstructionResult(ric, split, case,
                                 note="lambda = eta leaves a1 a2 = lambda underdetermined")
    residuals = [codazzi_max(g, c) for c in cands]
    if all(r > codazzi_tol for r in residuals):
        verdict, note = Verdict.NON_IMMERSIBLE, "no candidate is a Codazzi tensor"
    else:
        verdict, note = Verdict.INCONCLUSIVE, "a candidate satisfies the Codazzi equation"
    return ObstructionResult(ric, split, case, cands, residuals, verdict, note)
