"""Numerical checks for spinorial characterizations of hypersurfaces in 4-dimensional
space forms and products M^3(kappa) x R, on homogeneous framed 3-manifolds."""

from .catalog import (build_e_kappa_tau, build_fixture, build_sol3, build_torus_bundle,
                      catalog_list)
from .clifford import hermitian, mul_bivec, mul_vec, real_basis_coords
from .compatibility import check_compatibility, codazzi_tensor, gauss_residual
from .frame import (FrameGeometry, RicciSplit, eta_einstein_split, lie_bracket, ricci_matrix,
                    riemann)
from .killing import (Ambient, ImmersionData, dirac_residual, energy_momentum, killing_residual,
                      norm_condition_residual, reconstruct_shape)
from .obstruction import obstruct, solve_shape_candidates
from .spin import (FramedSpinorField, covariant_spinor_derivative, dirac, spin_connection_matrix,
                   spinorial_curvature)

__all__ = [
    "Ambient", "FrameGeometry", "FramedSpinorField", "ImmersionData", "RicciSplit",
    "build_e_kappa_tau", "build_fixture", "build_sol3", "build_torus_bundle", "catalog_list",
    "check_compatibility", "codazzi_tensor", "covariant_spinor_derivative", "dirac",
    "dirac_residual", "energy_momentum", "eta_einstein_split", "gauss_residual", "hermitian",
    "killing_residual", "lie_bracket", "mul_bivec", "mul_vec", "norm_condition_residual",
    "obstruct", "real_basis_coords", "reconstruct_shape", "ricci_matrix", "riemann",
    "solve_shape_candidates", "spin_connection_matrix", "spinorial_curvature",
]
