"""Spin connection, Dirac operator and spinorial curvature on framed geometries.

The spinor covariant derivative along ``e_i`` is
``nabla_i phi = e_i(phi) + Omega_i phi`` with
``Omega_i = 1/2 sum_{j<k} Gamma[i][j][k] gamma_j gamma_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import GAMMA, hermitian, mul_vec
from .errors import SpecialSpinorNotFound
from .frame import FrameGeometry, lie_bracket, riemann_tensor

_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class FramedSpinorField:
    """Spinor value at a point together with its frame-directional derivatives."""

    value: np.ndarray
    frame_derivs: np.ndarray = field(default_factory=lambda: np.zeros((3, 2), dtype=complex))

    def __post_init__(self):
        value = np.asarray(self.value, dtype=complex).reshape(2)
        derivs = np.asarray(self.frame_derivs, dtype=complex).reshape(3, 2)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "frame_derivs", derivs)

    @property
    def constant_components(self) -> bool:
        return not np.any(self.frame_derivs)

    def norm2_derivative(self, i: int) -> float:
        """``e_i(|phi|^2)`` computed from the component derivatives."""
        return 2.0 * hermitian(self.frame_derivs[i], self.value).real

    def to_json(self) -> dict:
        return {
            "value": _encode(self.value),
            "frame_derivs": [_encode(d) for d in self.frame_derivs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FramedSpinorField":
        value = _decode(obj["value"])
        derivs = obj.get("frame_derivs")
        if derivs is None:
            return cls(value)
        if len(derivs) != 3:
            raise ValueError("frame_derivs needs three entries")
        return cls(value, np.stack([_decode(d) for d in derivs]))


def _encode(z) -> list[float]:
    return [float(z[0].real), float(z[0].imag), float(z[1].real), float(z[1].imag)]


def _decode(seq) -> np.ndarray:
    if len(seq) != 4:
        raise ValueError("spinor must be encoded as [re, im, re, im]")
    a, b, c, d = (float(x) for x in seq)
    return np.array([a + 1j * b, c + 1j * d])


def spin_connection_matrix(g: FrameGeometry, i: int) -> np.ndarray:
    gam = g.christoffel
    return 0.5 * sum(gam[i, j, k] * (GAMMA[j] @ GAMMA[k]) for j, k in _PAIRS)


def spin_connection(g: FrameGeometry) -> np.ndarray:
    return np.stack([spin_connection_matrix(g, i) for i in range(3)])


def covariant_spinor_derivative(g: FrameGeometry, f: FramedSpinorField, i: int) -> np.ndarray:
    return f.frame_derivs[i] + spin_connection_matrix(g, i) @ f.value


def covariant_derivatives(g: FrameGeometry, f: FramedSpinorField) -> np.ndarray:
    return np.stack([covariant_spinor_derivative(g, f, i) for i in range(3)])


def dirac(g: FrameGeometry, f: FramedSpinorField) -> np.ndarray:
    return sum(GAMMA[i] @ covariant_spinor_derivative(g, f, i) for i in range(3))


def spinorial_curvature(g: FrameGeometry, i: int, j: int, phi) -> np.ndarray:
    """Curvature ``R(e_i, e_j)`` applied to a spinor with constant components."""
    om = spin_connection(g)
    br = lie_bracket(g, i, j)
    op = om[i] @ om[j] - om[j] @ om[i] - np.tensordot(br, om, axes=1)
    return op @ np.asarray(phi, dtype=complex)


def levi_civita_sign(i: int, j: int, k: int) -> int:
    return int(round(np.linalg.det(np.eye(3)[[i, j, k]])))


def ricci_identity_rhs(g: FrameGeometry, i: int, j: int, phi) -> np.ndarray:
    """``1/2 [R_ijik e_j - R_ijij e_k - R_ijjk e_i] . phi`` for cyclic (i, j, k).

    For an anticyclic ordering the bracket changes sign; the Levi-Civita
    factor carries that.
    """
    if i == j:
        return np.zeros(2, dtype=complex)
    k = 3 - i - j
    r = riemann_tensor(g)
    e = np.eye(3)
    vec = r[i, j, i, k] * e[j] - r[i, j, i, j] * e[k] - r[i, j, j, k] * e[i]
    return 0.5 * levi_civita_sign(i, j, k) * mul_vec(vec, phi)


def find_special_spinor(g: FrameGeometry, targets, tol: float = 1e-12) -> np.ndarray:
    """Unit constant spinor with ``Omega_i phi = targets[i] phi`` for every i.

    ``targets`` are 2x2 complex matrices (the prescribed right-hand sides).
    Among solutions the projection of ``(1, 0)`` (else ``(0, 1)``) is returned.
    """
    stacked = np.concatenate(
        [spin_connection_matrix(g, i) - np.asarray(targets[i], dtype=complex) for i in range(3)]
    )
    _, sv, vh = np.linalg.svd(stacked)
    null = vh[np.abs(sv) <= tol * max(1.0, float(sv.max()))].conj()
    if len(null) == 0:
        raise SpecialSpinorNotFound(
            f"no constant spinor solves the prescribed equations in {g.name} "
            f"(smallest singular value {sv.min():.3e})"
        )
    for seed in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
        proj = sum(np.vdot(b, seed) * b for b in null)
        n = np.linalg.norm(proj)
        if n > 1e-6:
            return proj / n
    return null[0] / np.linalg.norm(null[0])
