"""Gauss, Codazzi-Mainardi and structural residuals for frame-constant data."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frame import FrameGeometry, covariant_derivative, curvature_vector, lie_bracket
from .killing import Ambient, ImmersionData

DEFAULT_TOL = 1e-9


def codazzi_tensor(g: FrameGeometry, A, i: int, j: int) -> np.ndarray:
    """``d^nabla A(e_i, e_j) = nabla_i(A e_j) - nabla_j(A e_i) - A [e_i, e_j]``."""
    A = np.asarray(A, dtype=float)
    return (
        covariant_derivative(g, i, A[:, j])
        - covariant_derivative(g, j, A[:, i])
        - A @ lie_bracket(g, i, j)
    )


def codazzi_rhs(d: ImmersionData, i: int, j: int) -> np.ndarray:
    e = np.eye(3)
    return d.kappa * d.f * (d.T[j] * e[i] - d.T[i] * e[j])


def codazzi_residual(g: FrameGeometry, d: ImmersionData, i: int, j: int) -> np.ndarray:
    return codazzi_tensor(g, d.A, i, j) - codazzi_rhs(d, i, j)


def gauss_rhs(d: ImmersionData, i: int, j: int, k: int) -> np.ndarray:
    A, T, kappa = d.A, d.T, d.kappa
    e = np.eye(3)
    X, Y, Z = e[i], e[j], e[k]
    ax, ay = A[:, i], A[:, j]
    tx, ty, tz = T[i], T[j], T[k]
    ambient = (
        (X @ Z) * Y - (Y @ Z) * X
        - ty * (X @ Z) * T - tx * tz * Y
        + tx * (Y @ Z) * T + ty * tz * X
    )
    return (ax @ Z) * ay - (ay @ Z) * ax + kappa * ambient


def gauss_residual(g: FrameGeometry, d: ImmersionData, i: int, j: int, k: int) -> np.ndarray:
    d.validate()
    return curvature_vector(g, i, j, k) - gauss_rhs(d, i, j, k)


@dataclass
class CompatibilityReport:
    gauss_max_residual: float
    codazzi_max_residual: float
    structural_residuals: dict[str, float]
    tolerance: float
    worst_indices: dict[str, list[int]] = field(default_factory=dict)

    @property
    def verdicts(self) -> dict[str, bool]:
        out = {
            "gauss": self.gauss_max_residual <= self.tolerance,
            "codazzi": self.codazzi_max_residual <= self.tolerance,
        }
        for name, value in self.structural_residuals.items():
            out[name] = value <= self.tolerance
        return out

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "gauss": self.gauss_max_residual,
            "codazzi": self.codazzi_max_residual,
            "structural": dict(self.structural_residuals),
            "verdicts": self.verdicts,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "worst_indices": dict(self.worst_indices),
        }


def _max_over(fn, tuples):
    best, arg = 0.0, list(tuples[0])
    for idx in tuples:
        val = float(np.linalg.norm(fn(*idx)))
        if val > best:
            best, arg = val, list(idx)
    return best, arg


def check_compatibility(g: FrameGeometry, d: ImmersionData,
                        tol: float = DEFAULT_TOL) -> CompatibilityReport:
    """Evaluate every compatibility equation; structural ones only for product targets."""
    d.validate()
    triples = [(i, j, k) for i in range(3) for j in range(3) for k in range(3)]
    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3)]
    gauss, gauss_at = _max_over(lambda i, j, k: gauss_residual(g, d, i, j, k), triples)
    codazzi, codazzi_at = _max_over(lambda i, j: codazzi_residual(g, d, i, j), pairs)
    structural = {}
    worst = {"gauss": gauss_at, "codazzi": codazzi_at}
    if d.ambient is Ambient.PRODUCT:
        nabla_t, nabla_at = _max_over(
            lambda i: covariant_derivative(g, i, d.T) - d.f * d.A[:, i], [(i,) for i in range(3)]
        )
        # f is frame-constant, so df vanishes and only <A e_i, T> remains
        df, df_at = _max_over(lambda i: d.A[:, i] @ d.T, [(i,) for i in range(3)])
        structural = {
            "nabla_T": nabla_t,
            "df": df,
            "unit_norm": abs(d.T @ d.T + d.f**2 - 1.0),
        }
        worst["nabla_T"] = nabla_at
        worst["df"] = df_at
    return CompatibilityReport(gauss, codazzi, structural, tol, worst)
