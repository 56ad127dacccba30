import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_spinor(rng):
    return rng.normal(size=2) + 1j * rng.normal(size=2)


def random_christoffel(rng, scale=2.0):
    raw = rng.uniform(-scale, scale, size=(3, 3, 3))
    return 0.5 * (raw - raw.transpose(0, 2, 1))


def random_lie_christoffel(rng, scale=2.0):
    """Levi-Civita coefficients of a random left-invariant metric on a 3D Lie group.

    Brackets ``[e_i, e_j] = eps_ijl N_lk e_k + a_i e_j - a_j e_i`` with ``N``
    symmetric and ``N a = 0`` satisfy the Jacobi identity; the frame is
    declared orthonormal and the connection follows from the Koszul formula.
    """
    a = rng.uniform(-scale, scale, size=3) if rng.random() < 0.5 else np.zeros(3)
    m = rng.uniform(-scale, scale, size=(3, 3))
    m = 0.5 * (m + m.T)
    if np.any(a):
        p = np.eye(3) - np.outer(a, a) / (a @ a)
        m = p @ m @ p
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k], eps[j, i, k] = 1.0, -1.0
    c = np.einsum("ijl,lk->ijk", eps, m)
    c += np.einsum("i,jk->ijk", a, np.eye(3)) - np.einsum("j,ik->ijk", a, np.eye(3))
    return 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
