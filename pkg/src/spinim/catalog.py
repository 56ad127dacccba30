"""Named homogeneous geometries, their special spinors, and regression fixtures."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import GAMMA
from .errors import AlphaOutOfRange, SpinimError, TauZero
from .frame import FrameGeometry, flat_frame
from .killing import Ambient, ImmersionData, synthesize_killing_field
from .spin import FramedSpinorField, covariant_spinor_derivative, find_special_spinor

GOLDEN_ALPHA = (3.0 + np.sqrt(5.0)) / 2.0
FIXTURES = ("flat_plane", "hypersphere", "product_slice")


@dataclass
class Fixture:
    data: ImmersionData
    expected: str = "pass"
    # branch sign -> spinor satisfying that branch of the Killing equation
    spinors: dict[int, FramedSpinorField] = field(default_factory=dict)


@dataclass
class CatalogEntry:
    name: str
    geometry: FrameGeometry
    parameters: dict = field(default_factory=dict)
    special_spinor: FramedSpinorField | None = None
    # spinor_targets[i] is the 2x2 operator prescribed for nabla_{e_i} of the special spinor
    spinor_targets: np.ndarray | None = None
    fixtures: list[Fixture] = field(default_factory=list)
    space_form: bool = False

    def special_spinor_residuals(self) -> np.ndarray:
        if self.special_spinor is None:
            return np.zeros(3)
        phi = self.special_spinor.value
        return np.array([
            np.linalg.norm(covariant_spinor_derivative(self.geometry, self.special_spinor, i)
                           - self.spinor_targets[i] @ phi)
            for i in range(3)
        ])


def e_kappa_tau_christoffel(kappa: float, tau: float) -> np.ndarray:
    gam = np.zeros((3, 3, 3))
    gam[0, 1, 2] = gam[1, 2, 0] = tau
    gam[1, 0, 2] = gam[0, 2, 1] = -tau
    c = tau - kappa / (2.0 * tau)
    gam[2, 1, 0] = c
    gam[2, 0, 1] = -c
    return gam


def _sol_type_christoffel(scale: float) -> np.ndarray:
    gam = np.zeros((3, 3, 3))
    gam[0, 0, 2] = gam[1, 2, 1] = -scale
    gam[0, 2, 0] = gam[1, 1, 2] = scale
    return gam


def _with_special_spinor(entry: CatalogEntry, targets) -> CatalogEntry:
    targets = np.asarray(targets, dtype=complex)
    phi = find_special_spinor(entry.geometry, targets)
    entry.special_spinor = FramedSpinorField(phi)
    entry.spinor_targets = targets
    return entry


def e_kappa_tau_label(kappa: float, tau: float) -> str:
    if np.isclose(kappa, 4.0 * tau**2):
        return "round_sphere"
    if kappa > 0:
        return "berger"
    if kappa < 0:
        return "psl2"
    return "nil3"


def build_e_kappa_tau(kappa: float, tau: float) -> CatalogEntry:
    """Bundle E(kappa, tau) in the frame {e1, e2, xi = e3}."""
    kappa, tau = float(kappa), float(tau)
    if tau == 0.0:
        raise TauZero("E(kappa, tau) requires tau != 0")
    label = e_kappa_tau_label(kappa, tau)
    geom = FrameGeometry(e_kappa_tau_christoffel(kappa, tau),
                         f"E({kappa:g},{tau:g})", xi_index=2)
    entry = CatalogEntry(label, geom, {"kappa": kappa, "tau": tau},
                         space_form=label == "round_sphere")
    targets = [0.5 * tau * GAMMA[0], 0.5 * tau * GAMMA[1],
               0.5 * (kappa / (2.0 * tau) - tau) * GAMMA[2]]
    return _with_special_spinor(entry, targets)


def build_sol3() -> CatalogEntry:
    geom = FrameGeometry(_sol_type_christoffel(1.0), "Sol3", xi_index=2)
    entry = CatalogEntry("sol3", geom, {})
    return _with_special_spinor(entry, [0.5 * GAMMA[1], 0.5 * GAMMA[0], np.zeros((2, 2))])


def torus_matrix_parameters(B) -> tuple[float, float]:
    """Eigenvalue ``alpha > 1`` of a hyperbolic ``B`` in SL2(Z) and slope ``b``
    of the eigenvector for ``1/alpha``."""
    B = np.asarray(B, dtype=float)
    vals, vecs = np.linalg.eig(B)
    if np.iscomplexobj(vals) and np.any(np.abs(vals.imag) > 0):
        raise AlphaOutOfRange("B is not hyperbolic")
    vals = vals.real
    k_small = int(np.argmin(np.abs(vals)))
    alpha = float(abs(vals[1 - k_small]))
    v = vecs[:, k_small].real
    return alpha, float(v[1] / v[0])


def build_torus_bundle(alpha: float = GOLDEN_ALPHA, b: float | None = None) -> CatalogEntry:
    """Mapping torus T_B^3; only ``ln(alpha)`` enters the frame constants."""
    alpha = float(alpha)
    if not alpha > 1.0:
        raise AlphaOutOfRange(f"alpha must exceed 1, got {alpha}")
    la = np.log(alpha)
    geom = FrameGeometry(_sol_type_christoffel(la), f"T_B({alpha:g})", xi_index=2)
    params = {"alpha": alpha}
    if b is not None:
        params["b"] = float(b)
    entry = CatalogEntry("torus_bundle", geom, params)
    return _with_special_spinor(entry, [0.5 * la * GAMMA[1], 0.5 * la * GAMMA[0],
                                        np.zeros((2, 2))])


def build_fixture(name: str) -> CatalogEntry:
    """Trivial immersions: a flat hyperplane, the unit hypersphere and a slice S^3 x {t}."""
    if name == "flat_plane":
        entry = CatalogEntry(name, flat_frame("flat"), {"kappa": 0.0})
        entry = _with_special_spinor(entry, np.zeros((3, 2, 2)))
        data = ImmersionData(np.zeros((3, 3)), eta=0.0, ambient=Ambient.SPACE_FORM)
        spinors = {1: entry.special_spinor, -1: entry.special_spinor}
    elif name == "hypersphere":
        entry = build_e_kappa_tau(4.0, 1.0)
        entry.name = name
        data = ImmersionData(np.eye(3), eta=0.0, ambient=Ambient.SPACE_FORM)
        phi = entry.special_spinor.value
        spinors = {-1: entry.special_spinor,
                   1: synthesize_killing_field(entry.geometry, data.with_branch(1), phi)}
        data = data.with_branch(-1)
    elif name == "product_slice":
        entry = build_e_kappa_tau(4.0, 1.0)
        entry.name = name
        data = ImmersionData(np.zeros((3, 3)), np.zeros(3), 1.0, 0.5, Ambient.PRODUCT, 1)
        phi = entry.special_spinor.value
        spinors = {1: entry.special_spinor,
                   -1: synthesize_killing_field(entry.geometry, data.with_branch(-1), phi)}
    else:
        raise SpinimError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    entry.fixtures = [Fixture(data, "pass", spinors)]
    return entry


GEOMETRY_NAMES = ("e-kappa-tau", "sol3", "torus-bundle", "flat")


def named_geometry(name: str, kappa: float | None = None, tau: float | None = None,
                   alpha: float | None = None) -> CatalogEntry:
    if name == "e-kappa-tau":
        if kappa is None or tau is None:
            raise SpinimError("e-kappa-tau needs --kappa and --tau")
        return build_e_kappa_tau(kappa, tau)
    if name == "sol3":
        return build_sol3()
    if name == "torus-bundle":
        return build_torus_bundle(GOLDEN_ALPHA if alpha is None else alpha)
    if name == "flat":
        return build_fixture("flat_plane")
    raise SpinimError(f"unknown geometry {name!r}; choose from {', '.join(GEOMETRY_NAMES)}")


def catalog_list() -> list[CatalogEntry]:
    """Representative entry for every family plus the fixtures."""
    alpha, b = torus_matrix_parameters([[2, 1], [1, 1]])
    entries = [
        build_e_kappa_tau(0.0, 0.5),
        build_e_kappa_tau(1.0, 1.0),
        build_e_kappa_tau(-1.0, 1.0),
        build_e_kappa_tau(4.0, 1.0),
        build_sol3(),
        build_torus_bundle(alpha, b),
    ]
    entries.extend(build_fixture(name) for name in FIXTURES)
    return entries
