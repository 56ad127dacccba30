"""Homogeneous orthonormal frames with constant connection coefficients.

``christoffel[i, j, k] = <nabla_{e_i} e_j, e_k>``.  Curvature follows the
sign convention under which the unit sphere has ``R(X,Y)Z = <X,Z>Y - <Y,Z>X``,
i.e. ``R_{ijij}`` is the sectional curvature and ``Ric_{ij} = sum_k R_{kikj}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MetricCompatibilityError, NotEtaEinstein

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class FrameGeometry:
    christoffel: np.ndarray
    name: str = "frame"
    xi_index: int | None = None
    _riemann: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gam = np.array(self.christoffel, dtype=float)
        if gam.shape != (3, 3, 3):
            raise MetricCompatibilityError(f"christoffel must be 3x3x3, got {gam.shape}")
        skew = np.abs(gam + gam.transpose(0, 2, 1)).max()
        if skew > DEFAULT_TOL:
            raise MetricCompatibilityError(
                f"christoffel not skew in last two slots (residual {skew:.3e})"
            )
        gam.setflags(write=False)
        object.__setattr__(self, "christoffel", gam)
        object.__setattr__(self, "_riemann", _riemann_tensor(gam))

    def to_json(self) -> dict:
        out = {"name": self.name, "christoffel": self.christoffel.tolist()}
        if self.xi_index is not None:
            out["xi_index"] = self.xi_index
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FrameGeometry":
        if "christoffel" not in obj:
            raise MetricCompatibilityError("geometry object lacks 'christoffel'")
        xi = obj.get("xi_index")
        return cls(np.asarray(obj["christoffel"], dtype=float), str(obj.get("name", "frame")),
                   None if xi is None else int(xi))


def flat_frame(name: str = "flat") -> FrameGeometry:
    return FrameGeometry(np.zeros((3, 3, 3)), name)


def load_geometry(path) -> FrameGeometry:
    return FrameGeometry.from_json(json.loads(Path(path).read_text()))


def lie_bracket(g: FrameGeometry, i: int, j: int) -> np.ndarray:
    """Frame components of ``[e_i, e_j] = nabla_i e_j - nabla_j e_i``."""
    gam = g.christoffel
    return gam[i, j] - gam[j, i]


def covariant_derivative(g: FrameGeometry, i: int, v) -> np.ndarray:
    """``nabla_{e_i} V`` for a field with constant frame components ``v``."""
    return np.asarray(v, dtype=float) @ g.christoffel[i]


def _riemann_tensor(gam: np.ndarray) -> np.ndarray:
    # standard operator nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y] acting on e_k
    brackets = gam - gam.transpose(1, 0, 2)
    std = (
        np.einsum("jkl,ilm->ijkm", gam, gam)
        - np.einsum("ikl,jlm->ijkm", gam, gam)
        - np.einsum("ijl,lkm->ijkm", brackets, gam)
    )
    return -std


def riemann_tensor(g: FrameGeometry) -> np.ndarray:
    """Full array ``R[i, j, k, l] = <R(e_i, e_j) e_k, e_l>``."""
    return g._riemann


def riemann(g: FrameGeometry, i: int, j: int, k: int, l: int) -> float:
    return float(g._riemann[i, j, k, l])


def curvature_vector(g: FrameGeometry, i: int, j: int, k: int) -> np.ndarray:
    """Frame components of ``R(e_i, e_j) e_k``."""
    return g._riemann[i, j, k].copy()


def ricci_matrix(g: FrameGeometry) -> np.ndarray:
    ric = np.einsum("kikj->ij", g._riemann)
    return 0.5 * (ric + ric.T)


@dataclass(frozen=True)
class RicciSplit:
    lam: float
    eta_einstein: float
    xi_index: int

    def reconstruct(self) -> np.ndarray:
        xi = np.zeros(3)
        xi[self.xi_index] = 1.0
        return self.lam * np.eye(3) + self.eta_einstein * np.outer(xi, xi)


def eta_einstein_split(ric, xi_index: int, tol: float = DEFAULT_TOL) -> RicciSplit:
    """Write ``ric = lam Id + eta xi(x)xi`` with ``xi = e_{xi_index}``."""
    ric = np.asarray(ric, dtype=float)
    if np.abs(ric - ric.T).max() > tol:
        raise NotEtaEinstein("Ricci matrix is not symmetric")
    a, b = (k for k in range(3) if k != xi_index)
    off = np.abs(ric - np.diag(np.diag(ric))).max()
    aniso = abs(ric[a, a] - ric[b, b])
    if max(off, aniso) > tol:
        raise NotEtaEinstein(
            f"not eta-Einstein about e{xi_index + 1}: off-diagonal {off:.3e}, "
            f"transverse anisotropy {aniso:.3e}"
        )
    lam = 0.5 * (ric[a, a] + ric[b, b])
    return RicciSplit(float(lam), float(ric[xi_index, xi_index] - lam), xi_index)
