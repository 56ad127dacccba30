import numpy as np
import pytest

from spinim.catalog import GOLDEN_ALPHA, build_e_kappa_tau, build_sol3, build_torus_bundle
from spinim.errors import EtaZero, NotEtaEinstein
from spinim.frame import FrameGeometry
from spinim.obstruction import (Case, Verdict, obstruct, product_residuals,
                                solve_shape_candidates)


def test_sol3_case():
    case, cands = solve_shape_candidates(0.0, -2.0)
    assert case is Case.NEGATIVE_SQUARE and cands == []


def test_lambda_equals_minus_eta():
    assert solve_shape_candidates(1.0, -1.0)[0] is Case.LAMBDA_EQUALS_MINUS_ETA


def test_berger_candidates():
    case, cands = solve_shape_candidates(-1.0, 3.0)
    assert case is Case.CANDIDATES
    np.testing.assert_allclose(cands[0], np.diag([1.0, 1.0, -2.0]), atol=1e-15)
    np.testing.assert_allclose(cands[1], -np.diag([1.0, 1.0, -2.0]), atol=1e-15)
    d = np.diag(cands[0])
    assert d[0] * d[1] == pytest.approx(1.0) and d[0] * d[2] == pytest.approx(-2.0)


def test_eta_zero():
    with pytest.raises(EtaZero):
        solve_shape_candidates(1.0, 0.0)


def test_lambda_equals_eta_is_underdetermined():
    assert solve_shape_candidates(1.0, 1.0)[0] is Case.LAMBDA_EQUALS_ETA


def test_candidates_satisfy_system(rng):
    for _ in range(200):
        eta = rng.uniform(-5, 5)
        lam = rng.uniform(-eta + 1e-3, 10) if rng.random() < 0.5 else rng.uniform(-5, 5)
        if abs(eta) < 1e-6:
            continue
        case, cands = solve_shape_candidates(lam, eta)
        if lam + eta < 0:
            assert case is Case.NEGATIVE_SQUARE
        if case is Case.CANDIDATES:
            for c in cands:
                assert np.abs(product_residuals(c, lam, eta)).max() <= 1e-12


def test_xi_placement():
    _, cands = solve_shape_candidates(-1.0, 3.0, xi_index=0)
    np.testing.assert_allclose(np.diag(cands[0]), [-2.0, 1.0, 1.0])
    assert np.abs(product_residuals(cands[0], -1.0, 3.0, xi_index=0)).max() == 0


def test_obstruct_sol3():
    res = obstruct(build_sol3().geometry)
    assert res.verdict is Verdict.NON_IMMERSIBLE and res.case_tag is Case.NEGATIVE_SQUARE


def test_obstruct_berger_audit_trail():
    res = obstruct(build_e_kappa_tau(1.0, 1.0).geometry)
    assert res.verdict is Verdict.NON_IMMERSIBLE and res.case_tag is Case.CANDIDATES
    assert len(res.candidates) == 2 and all(r > 1e-9 for r in res.codazzi_residuals)
    out = res.to_json()
    assert out["split"] == {"lambda": pytest.approx(-1.0), "eta": pytest.approx(3.0),
                            "xi_index": 2}


def test_obstruct_torus_bundle():
    res = obstruct(build_torus_bundle(GOLDEN_ALPHA).geometry)
    assert res.verdict is Verdict.NON_IMMERSIBLE
    assert res.split.eta_einstein == pytest.approx(-2 * np.log(GOLDEN_ALPHA) ** 2)


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("kappa", [-1.0, 0.0, 1.0])
def test_all_bundles_non_immersible(kappa, tau):
    if np.isclose(kappa, 4 * tau * tau):
        pytest.skip("round sphere")
    assert obstruct(build_e_kappa_tau(kappa, tau).geometry).verdict is Verdict.NON_IMMERSIBLE


@pytest.mark.parametrize("alpha", [2.0, GOLDEN_ALPHA])
def test_torus_family(alpha):
    assert obstruct(build_torus_bundle(alpha).geometry).verdict is Verdict.NON_IMMERSIBLE


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_round_sphere_never_non_immersible(tau):
    res = obstruct(build_e_kappa_tau(4 * tau * tau, tau).geometry)
    assert res.verdict is Verdict.INCONCLUSIVE


def test_obstruct_rejects_non_eta_einstein(rng):
    # Bianchi VI-type frame: Ricci has three distinct eigenvalues
    gam = np.zeros((3, 3, 3))
    gam[0, 0, 2], gam[0, 2, 0] = -1.0, 1.0
    gam[1, 1, 2], gam[1, 2, 1] = -2.0, 2.0
    with pytest.raises(NotEtaEinstein):
        obstruct(FrameGeometry(gam))
