"""Complex Clifford algebra Cl(3) acting on two-component spinors.

Clifford multiplication uses the negative-definite convention
``v.v.phi = -|v|^2 phi`` and the complex volume element ``-e1.e2.e3``
acts as the identity, so ``ei.ej = ek`` for cyclic ``(i, j, k)``.
"""

from __future__ import annotations

import numpy as np

from .errors import ZeroBaseSpinor

PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)

# gamma_j = -i sigma_j
GAMMA = -1.0j * PAULI
GAMMA.setflags(write=False)

IDENTITY = np.eye(2, dtype=complex)
ATOL = 1e-12


def spinor(c1, c2=None) -> np.ndarray:
    """Build a spinor from two complex components (or one length-2 sequence)."""
    if c2 is None:
        arr = np.asarray(c1, dtype=complex).reshape(2)
    else:
        arr = np.array([c1, c2], dtype=complex)
    return arr


def gamma(v) -> np.ndarray:
    """Matrix of Clifford multiplication by the real frame vector ``v``."""
    v = np.asarray(v, dtype=float)
    return np.tensordot(v, GAMMA, axes=1)


def mul_vec(v, phi) -> np.ndarray:
    return gamma(v) @ np.asarray(phi, dtype=complex)


def mul_bivec(v, w, phi) -> np.ndarray:
    return mul_vec(v, mul_vec(w, phi))


def hermitian(psi, phi) -> complex:
    """Hermitian product, linear in ``psi`` and conjugate-linear in ``phi``."""
    return complex(np.vdot(np.asarray(phi, dtype=complex), np.asarray(psi, dtype=complex)))


def real_product(psi, phi) -> float:
    return hermitian(psi, phi).real


def norm2(phi) -> float:
    return hermitian(phi, phi).real


def real_basis(phi) -> np.ndarray:
    """Rows ``phi/|phi|, e1.phi/|phi|, e2.phi/|phi|, e3.phi/|phi|``.

    The rows are orthonormal for ``Re<.,.>``.
    """
    phi = np.asarray(phi, dtype=complex)
    n = np.sqrt(norm2(phi))
    if n < ATOL:
        raise ZeroBaseSpinor("base spinor vanishes")
    return np.stack([phi] + [GAMMA[i] @ phi for i in range(3)]) / n


def real_basis_coords(phi, psi) -> tuple[float, np.ndarray]:
    """Return ``(r, v)`` with ``psi = v.phi + r phi``."""
    basis = real_basis(phi)
    n = np.sqrt(norm2(phi))
    coords = np.array([real_product(psi, b) for b in basis]) / n
    return float(coords[0]), coords[1:]


def check_representation(atol: float = ATOL) -> dict[str, float]:
    """Residuals of the defining identities of the fixed representation."""
    anti = 0.0
    for i in range(3):
        for j in range(3):
            m = GAMMA[i] @ GAMMA[j] + GAMMA[j] @ GAMMA[i] + 2.0 * (i == j) * IDENTITY
            anti = max(anti, float(np.abs(m).max()))
    skew = max(float(np.abs(g + g.conj().T).max()) for g in GAMMA)
    volume = float(np.abs(-GAMMA[0] @ GAMMA[1] @ GAMMA[2] - IDENTITY).max())
    cyclic = max(
        float(np.abs(GAMMA[i] @ GAMMA[j] - GAMMA[k]).max())
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    )
    return {
        "anticommutation": anti,
        "anti_hermitian": skew,
        "volume_element": volume,
        "cyclic_products": cyclic,
    }


def _verify_at_import():
    bad = {k: v for k, v in check_representation().items() if v > ATOL}
    if bad:
        raise RuntimeError(f"Clifford representation broken: {bad}")


_verify_at_import()
