"""Generalized Killing and Dirac equations, energy-momentum tensor, shape reconstruction.

A single branch sign ``eps`` covers every printed pairing:

    nabla_X phi = -eps/2 A(X).phi + eta X.T.phi + eps eta f X.phi + eta <X,T> phi
    D phi       =  eps 3/2 H phi - 2 eta T.phi - 3 eps eta f phi

Product target: phi_1 <-> eps=+1, phi_2 <-> eps=-1.
Space form (T=0, f=1): the spinor with +A/2 - eta X is eps=-1, the one with
-A/2 + eta X is eps=+1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .clifford import GAMMA, gamma, hermitian, norm2, real_basis_coords, real_product
from .errors import InvalidData, PreconditionFailed, ZeroSpinor
from .frame import FrameGeometry
from .spin import FramedSpinorField, covariant_derivatives, covariant_spinor_derivative, dirac

RESIDUAL_TOL = 1e-9
_ZERO_NORM = 1e-14


class Ambient(str, Enum):
    SPACE_FORM = "space_form"
    PRODUCT = "product"


@dataclass(frozen=True)
class ImmersionData:
    """Shape-operator candidate and the ambient data it is tested against.

    ``H`` is the mean-curvature value fed to the Dirac equation.  When omitted
    it defaults to ``trace(A)/3``, the value for which a Killing solution
    satisfies the Dirac equation exactly.
    """

    A: np.ndarray
    T: np.ndarray = None
    f: float = 1.0
    eta: complex = 0.0
    ambient: Ambient = Ambient.SPACE_FORM
    branch: int = 1
    H: float | None = None

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        T = np.zeros(3) if self.T is None else np.asarray(self.T, dtype=float)
        if A.shape != (3, 3):
            raise InvalidData(f"A must be 3x3, got {A.shape}")
        if T.shape != (3,):
            raise InvalidData(f"T must have 3 components, got {T.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "f", float(self.f))
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        if self.H is not None:
            object.__setattr__(self, "H", float(self.H))

    @property
    def kappa(self) -> float:
        return float((4.0 * self.eta**2).real)

    @property
    def mean_curvature(self) -> float:
        return self.A.trace() / 3.0 if self.H is None else self.H

    def validate(self, tol: float = RESIDUAL_TOL) -> None:
        if np.abs(self.A - self.A.T).max() > tol:
            raise InvalidData("A is not symmetric")
        if abs(self.eta.real * self.eta.imag) > tol:
            raise InvalidData(f"eta must be real or purely imaginary, got {self.eta}")
        if self.branch not in (1, -1):
            raise InvalidData(f"branch must be +1 or -1, got {self.branch}")
        if self.ambient is Ambient.PRODUCT:
            unit = self.T @ self.T + self.f**2 - 1.0
            if abs(unit) > tol:
                raise InvalidData(f"|T|^2 + f^2 - 1 = {unit:.3e}")
        elif np.abs(self.T).max() > tol or abs(self.f - 1.0) > tol:
            raise InvalidData("space-form data requires T = 0 and f = 1")

    @property
    def eta_is_real(self) -> bool:
        return self.eta.imag == 0.0

    def with_branch(self, branch: int) -> "ImmersionData":
        return ImmersionData(self.A, self.T, self.f, self.eta, self.ambient, branch, self.H)

    def to_json(self) -> dict:
        out = {
            "A": self.A.tolist(),
            "T": self.T.tolist(),
            "f": self.f,
            "eta": {"re": self.eta.real, "im": self.eta.imag},
            "ambient": self.ambient.value,
            "branch": self.branch,
        }
        if self.H is not None:
            out["H"] = self.H
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ImmersionData":
        try:
            eta = obj.get("eta", 0.0)
            if isinstance(eta, dict):
                eta = complex(float(eta.get("re", 0.0)), float(eta.get("im", 0.0)))
            data = cls(
                A=obj["A"],
                T=obj.get("T"),
                f=obj.get("f", 1.0),
                eta=eta,
                ambient=obj.get("ambient", "space_form"),
                branch=int(obj.get("branch", 1)),
                H=obj.get("H"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed immersion data: {exc}") from exc
        data.validate()
        return data


def load_immersion_data(path) -> ImmersionData:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidData(f"{path}: {exc}") from exc
    return ImmersionData.from_json(obj)


def killing_rhs(d: ImmersionData, i: int, phi) -> np.ndarray:
    """Right-hand side of the generalized Killing equation in direction ``e_i``."""
    phi = np.asarray(phi, dtype=complex)
    eps, eta = d.branch, d.eta
    gi = GAMMA[i]
    return (
        -0.5 * eps * gamma(d.A[:, i]) @ phi
        + eta * gi @ (gamma(d.T) @ phi)
        + eps * eta * d.f * (gi @ phi)
        + eta * d.T[i] * phi
    )


def killing_residual(g: FrameGeometry, f_spin: FramedSpinorField, d: ImmersionData, i: int):
    d.validate()
    return covariant_spinor_derivative(g, f_spin, i) - killing_rhs(d, i, f_spin.value)


def dirac_rhs(d: ImmersionData, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    eps, eta = d.branch, d.eta
    return (
        eps * 1.5 * d.mean_curvature * phi
        - 2.0 * eta * (gamma(d.T) @ phi)
        - 3.0 * eps * eta * d.f * phi
    )


def dirac_residual(g: FrameGeometry, f_spin: FramedSpinorField, d: ImmersionData):
    d.validate()
    return dirac(g, f_spin) - dirac_rhs(d, f_spin.value)


def norm_condition_residual(g: FrameGeometry, f_spin: FramedSpinorField, d: ImmersionData,
                            i: int) -> float:
    """``e_i|phi|^2`` minus its prescribed value.

    Real eta: the norm must be constant.  Imaginary eta:
    ``e_i|phi|^2 = 2 Re<eta e_i.T.phi + eps eta f e_i.phi, phi>``; the branch
    sign on the f-term is the one the Killing equation of that branch implies.
    """
    d.validate()
    lhs = f_spin.norm2_derivative(i)
    if d.eta_is_real:
        return lhs
    phi = f_spin.value
    gi = GAMMA[i]
    source = d.eta * (gi @ (gamma(d.T) @ phi)) + d.branch * d.eta * d.f * (gi @ phi)
    return lhs - 2.0 * real_product(source, phi)


def norm_condition_residual_unit_factor(g: FrameGeometry, f_spin: FramedSpinorField,
                                        d: ImmersionData, i: int) -> float:
    """Variant ``e_i|phi|^2 - Re<i e_i.T.phi + eps i f e_i.phi, phi>`` (no eta factor).

    Coincides with :func:`norm_condition_residual` when ``eta = i/2``.
    """
    phi = f_spin.value
    gi = GAMMA[i]
    source = 1j * (gi @ (gamma(d.T) @ phi)) + d.branch * 1j * d.f * (gi @ phi)
    return f_spin.norm2_derivative(i) - real_product(source, phi)


@dataclass(frozen=True)
class EnergyMomentum:
    Q: np.ndarray


def _energy_matrix(phi, nablas) -> np.ndarray:
    n2 = norm2(phi)
    if n2 < _ZERO_NORM:
        raise ZeroSpinor("energy-momentum tensor needs a non-vanishing spinor")
    m = np.array([[real_product(GAMMA[i] @ nablas[j], phi) for j in range(3)] for i in range(3)])
    return 0.5 * (m + m.T) / n2


def energy_momentum(g: FrameGeometry, f_spin: FramedSpinorField) -> EnergyMomentum:
    """``Q(e_i,e_j) = 1/2 Re<e_i.nabla_j phi + e_j.nabla_i phi, phi>/|phi|^2``."""
    if norm2(f_spin.value) < _ZERO_NORM:
        raise ZeroSpinor("energy-momentum tensor needs a non-vanishing spinor")
    return EnergyMomentum(_energy_matrix(f_spin.value, covariant_derivatives(g, f_spin)))


@dataclass(frozen=True)
class ReconstructionResult:
    A_rec: np.ndarray
    omega: np.ndarray
    U: np.ndarray
    V: np.ndarray
    S: np.ndarray
    Q: np.ndarray
    killing_max_residual: float

    def to_json(self) -> dict:
        return {
            "A_rec": self.A_rec.tolist(),
            "omega": self.omega.tolist(),
            "U": self.U.tolist(),
            "V": self.V.tolist(),
            "S": self.S.tolist(),
            "Q": self.Q.tolist(),
            "killing_max_residual": self.killing_max_residual,
        }


def imaginary_correction(phi, T, eta: complex) -> np.ndarray:
    """Symmetric correction ``V`` entering the shape operator when eta is imaginary.

    ``V_ij = [2 delta_ij Re<eta T.phi, phi> - Re<eta (T_j e_i + T_i e_j).phi, phi>] / |phi|^2``;
    identically zero for real eta.
    """
    if complex(eta).imag == 0.0:
        return np.zeros((3, 3))
    phi = np.asarray(phi, dtype=complex)
    T = np.asarray(T, dtype=float)
    n2 = norm2(phi)
    diag = 2.0 * real_product(eta * (gamma(T) @ phi), phi)
    rows = np.array([real_product(eta * (GAMMA[i] @ phi), phi) for i in range(3)])
    return (diag * np.eye(3) - (np.outer(rows, T) + np.outer(T, rows))) / n2


def reconstruct_shape(g: FrameGeometry, f_spin: FramedSpinorField, T, f: float, eta: complex,
                      H: float | None = None, branch: int = 1,
                      tol: float = RESIDUAL_TOL) -> ReconstructionResult:
    """Recover the shape operator from a Dirac solution with the prescribed norm behaviour.

    ``H=None`` takes the mean curvature from the recovered trace; only the
    vector part of the Dirac equation is then a genuine constraint.
    """
    phi = f_spin.value
    n2 = norm2(phi)
    if n2 < _ZERO_NORM:
        raise ZeroSpinor("reconstruction needs a non-vanishing spinor")
    T = np.zeros(3) if T is None else np.asarray(T, dtype=float)
    eta = complex(eta)
    ambient = Ambient.SPACE_FORM if (not np.any(T) and f == 1.0) else Ambient.PRODUCT

    nablas = covariant_derivatives(g, f_spin)
    B = np.empty((3, 3))
    omega = np.empty(3)
    for i in range(3):
        omega[i], B[:, i] = real_basis_coords(phi, nablas[i])
    S = 0.5 * (B + B.T)
    U = 0.5 * (B - B.T)
    Q = _energy_matrix(phi, nablas)
    V = imaginary_correction(phi, T, eta)
    A_rec = branch * (2.0 * Q + V) + 2.0 * eta.real * f * np.eye(3)
    A_rec = 0.5 * (A_rec + A_rec.T)

    H_used = A_rec.trace() / 3.0 if H is None else H
    data = ImmersionData(A_rec, T, f, eta, ambient, branch, H_used)
    dres = np.abs(dirac_residual(g, f_spin, data)).max()
    if dres > tol:
        raise PreconditionFailed(f"Dirac residual {dres:.3e} exceeds {tol:.1e}")
    nres = max(abs(norm_condition_residual(g, f_spin, data, i)) for i in range(3))
    if nres > tol:
        raise PreconditionFailed(f"norm-condition residual {nres:.3e} exceeds {tol:.1e}")
    kres = max(float(np.abs(killing_residual(g, f_spin, data, i)).max()) for i in range(3))
    return ReconstructionResult(A_rec, omega, U, V, S, Q, kres)


def synthesize_killing_field(g: FrameGeometry, d: ImmersionData, phi) -> FramedSpinorField:
    """Pointwise field whose covariant derivatives equal the Killing right-hand side."""
    phi = np.asarray(phi, dtype=complex)
    from .spin import spin_connection_matrix

    derivs = np.stack([killing_rhs(d, i, phi) - spin_connection_matrix(g, i) @ phi
                       for i in range(3)])
    return FramedSpinorField(phi, derivs)


def spinor_report(g: FrameGeometry, f_spin: FramedSpinorField, d: ImmersionData,
                  tol: float = RESIDUAL_TOL) -> dict:
    """Residual summary of the Killing, Dirac and norm equations for one spinor."""
    killing = [float(np.linalg.norm(killing_residual(g, f_spin, d, i))) for i in range(3)]
    dres = float(np.linalg.norm(dirac_residual(g, f_spin, d)))
    norms = [abs(norm_condition_residual(g, f_spin, d, i)) for i in range(3)]
    report = {
        "branch": d.branch,
        "killing": killing,
        "dirac": dres,
        "norm_condition": norms,
        "mean_curvature": d.mean_curvature,
        "mean_curvature_convention": "trace/3" if d.H is None else "given",
    }
    if not d.eta_is_real:
        report["norm_condition_unit_factor"] = [
            abs(norm_condition_residual_unit_factor(g, f_spin, d, i)) for i in range(3)
        ]
    report["pass"] = bool(max(killing + [dres] + norms) <= tol)
    return report
