import math

import numpy as np
import pytest

from catgraph.graph import AsymmetricCouplingError, BccbCoupling, CirculantMatrix, GeneratingVector, adjacency
from catgraph.symplectic import (
    build_L,
    build_M,
    build_M_bccb,
    eigen_relation_check,
    is_anti_symplectic,
    is_symplectic,
    symplectic_form,
    symplectic_inverse,
)

from conftest import bareiss_det, random_symmetric_bits

ACM = np.array([[1, 1], [1, 2]])


def test_symplectic_form():
    for n in (1, 3, 5):
        J = symplectic_form(n)
        np.testing.assert_array_equal(J @ J, -np.eye(2 * n, dtype=int))
        np.testing.assert_array_equal(J.T, -J)


def test_build_L_examples():
    np.testing.assert_array_equal(build_L(np.array([[1]])).matrix, [[0, 1], [1, 1]])
    np.testing.assert_array_equal(
        build_L(np.zeros((3, 3), dtype=int)).matrix,
        np.block([[np.zeros((3, 3)), np.eye(3)], [np.eye(3), np.zeros((3, 3))]]),
    )
    k1, k2, c = 2, 3, 5
    L = build_L(np.array([[k1, c], [c, k2]])).matrix
    expected = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, k1, c], [0, 1, c, k2]]
    np.testing.assert_array_equal(L, expected)
    with pytest.raises(AsymmetricCouplingError):
        build_L(np.array([[0, 1], [0, 0]]))


def test_build_M_examples():
    np.testing.assert_array_equal(build_M(np.array([[1]])).matrix, ACM)
    np.testing.assert_array_equal(build_M(np.zeros((4, 4), dtype=int)).matrix, np.eye(8, dtype=int))
    C = np.array([[0, 1], [1, 0]])
    I = np.eye(2, dtype=int)
    np.testing.assert_array_equal(build_M(C).matrix, np.block([[I, C], [C, 2 * I]]))
    with pytest.raises(AsymmetricCouplingError):
        build_M(GeneratingVector((0, 0, 1)))


def test_M_is_L_squared(rng):
    for n in range(1, 9):
        g = random_symmetric_bits(n, rng)
        L = build_L(g).matrix
        np.testing.assert_array_equal(build_M(g).matrix, L @ L)


def test_checks_on_examples():
    assert is_symplectic(ACM)
    assert is_symplectic(np.eye(6, dtype=int))
    assert not is_symplectic(np.array([[1, 1], [0, -1]]))
    assert is_anti_symplectic(np.array([[0, 1], [1, 1]]))
    assert not is_anti_symplectic(np.eye(4, dtype=int))
    with pytest.raises(ValueError):
        is_symplectic(np.eye(3, dtype=int))
    with pytest.raises(ValueError):
        is_anti_symplectic(np.eye(3, dtype=int))


def test_random_couplings_exact(rng):
    for _ in range(100):
        n = int(rng.integers(1, 17))
        g = random_symmetric_bits(n, rng)
        assert is_anti_symplectic(build_L(g))
        assert is_symplectic(build_M(g))


def test_det_and_positive_definite(rng):
    for _ in range(40):
        n = int(rng.integers(1, 9))
        g = random_symmetric_bits(n, rng)
        M = build_M(g).matrix
        assert bareiss_det(M) == 1
        np.testing.assert_array_equal(M, M.T)
        lam = np.linalg.eigvalsh(M.astype(float))
        assert lam.min() > 0
        # eigenvalues pair up as (rho, 1/rho)
        np.testing.assert_allclose(np.sort(lam) * np.sort(lam)[::-1], 1.0, rtol=1e-10)
        for k in range(1, 2 * n + 1):
            assert bareiss_det(M[:k, :k]) > 0


def test_products_stay_symplectic(rng):
    for _ in range(20):
        n = int(rng.integers(1, 9))
        M1 = build_M(random_symmetric_bits(n, rng)).matrix
        M2 = build_M(random_symmetric_bits(n, rng)).matrix
        assert is_symplectic(M1 @ M2)


def test_symplectic_inverse(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        M = build_M(random_symmetric_bits(n, rng)).matrix
        np.testing.assert_array_equal(symplectic_inverse(M) @ M, np.eye(2 * n, dtype=int))


def test_large_entries_use_exact_arithmetic():
    big = 3_000_000_000
    C = np.array([[big, 1], [1, big]], dtype=object)
    assert is_symplectic(build_M(C))


# -- BCCB --------------------------------------------------------------------


def test_bccb_block_diagonal_case():
    C = adjacency(GeneratingVector((0, 1, 1)))
    Cp = adjacency(GeneratingVector((1, 1, 1)))
    Z = CirculantMatrix.zeros(3)
    M = build_M_bccb(BccbCoupling(C, Z, Cp)).matrix
    c, cp = C.dense(), Cp.dense()
    I, O = np.eye(3, dtype=int), np.zeros((3, 3), dtype=int)
    expected = np.block(
        [
            [I, O, c, O],
            [O, I, O, cp],
            [c, O, I + c @ c, O],
            [O, cp, O, I + cp @ cp],
        ]
    )
    np.testing.assert_array_equal(M, expected)
    assert is_symplectic(M)


def test_bccb_zero_is_identity():
    Z = CirculantMatrix.zeros(4)
    np.testing.assert_array_equal(build_M_bccb(BccbCoupling(Z, Z, Z)).matrix, np.eye(16, dtype=int))


def test_bccb_random_blocks_symplectic(rng):
    for _ in range(30):
        n = 4
        C = CirculantMatrix(random_symmetric_bits(n, rng).bits)
        Cp = CirculantMatrix(random_symmetric_bits(n, rng).bits)
        B = CirculantMatrix(tuple(rng.integers(0, 3, n).tolist()))
        M = build_M_bccb(BccbCoupling(C, B, Cp))
        assert M.matrix.shape == (16, 16)
        assert is_symplectic(M)


def test_bccb_rejects_asymmetric_diagonal():
    P = CirculantMatrix.shift(3)
    I = CirculantMatrix.identity(3)
    with pytest.raises(AsymmetricCouplingError):
        build_M_bccb(BccbCoupling(P, I, I))


# -- eigenvalue relation -----------------------------------------------------


def test_eigen_relation_examples():
    g1 = GeneratingVector((1,))
    assert eigen_relation_check(g1)
    lam = np.linalg.eigvalsh(ACM.astype(float))
    np.testing.assert_allclose(lam + 1 / lam, 3.0, rtol=1e-12)
    assert eigen_relation_check(GeneratingVector((0, 0, 0)))
    K3 = GeneratingVector((0, 1, 1))
    assert eigen_relation_check(K3)
    lam = np.sort(np.linalg.eigvalsh(build_M(K3).matrix.astype(float)))[::-1]
    np.testing.assert_allclose(lam[:3], [3 + 2 * math.sqrt(2), (3 + math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])


def test_eigen_relation_random_and_dense_array(rng):
    for n in range(1, 9):
        g = random_symmetric_bits(n, rng)
        assert eigen_relation_check(g)
        assert eigen_relation_check(adjacency(g).dense())
    # large n skips the dense comparison but still checks the quadratic
    assert eigen_relation_check(random_symmetric_bits(64, rng))
