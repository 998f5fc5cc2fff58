"""Fibonacci matrix ``L``, evolution matrix ``M = L^2`` and exact (anti-)symplectic checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import (
    AsymmetricCouplingError,
    BccbCoupling,
    CirculantMatrix,
    GeneratingVector,
    as_coupling_dense,
)

__all__ = [
    "EvolutionMatrix",
    "FibonacciMatrix",
    "build_L",
    "build_M",
    "build_M_bccb",
    "eigen_relation_check",
    "exact_matmul",
    "is_anti_symplectic",
    "is_symplectic",
    "symplectic_form",
    "symplectic_inverse",
]

_SAFE = 2**62


@dataclass(frozen=True, eq=False)
class FibonacciMatrix:
    n: int
    matrix: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True, eq=False)
class EvolutionMatrix:
    """``[[I, C], [C, I + C^2]]`` acting on row vectors ``(q, p)``."""

    n: int
    matrix: np.ndarray
    coupling: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def symplectic_form(n: int) -> np.ndarray:
    """``J = [[0, -I], [I, 0]]`` of size ``2n``."""
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = -np.eye(n, dtype=np.int64)
    J[n:, :n] = np.eye(n, dtype=np.int64)
    return J


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer product, promoted to Python ints when int64 could overflow."""
    A = np.asarray(A)
    B = np.asarray(B)
    amax = int(np.abs(A).max(initial=0))
    bmax = int(np.abs(B).max(initial=0))
    if A.dtype != object and B.dtype != object and A.shape[-1] * amax * bmax < _SAFE:
        return A.astype(np.int64) @ B.astype(np.int64)
    return A.astype(object) @ B.astype(object)


def _coupling(C) -> np.ndarray:
    A = as_coupling_dense(C)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"coupling must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise AsymmetricCouplingError("coupling matrix must be symmetric")
    return A


def build_L(C) -> FibonacciMatrix:
    A = _coupling(C)
    n = A.shape[0]
    L = np.zeros((2 * n, 2 * n), dtype=A.dtype)
    L[:n, n:] = np.eye(n, dtype=np.int64)
    L[n:, :n] = np.eye(n, dtype=np.int64)
    L[n:, n:] = A
    return FibonacciMatrix(n, L)


def build_M(C) -> EvolutionMatrix:
    A = _coupling(C)
    n = A.shape[0]
    I = np.eye(n, dtype=np.int64)
    M = np.block([[I, A], [A, I + exact_matmul(A, A)]])
    return EvolutionMatrix(n, M, A)


def build_M_bccb(c: BccbCoupling) -> EvolutionMatrix:
    """Evolution matrix of dimension ``4n`` for a BCCB coupling."""
    return build_M(c)


def _check_even_square(X: np.ndarray) -> int:
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    if X.shape[0] % 2:
        raise ValueError(f"symplectic checks need even dimension, got {X.shape[0]}")
    return X.shape[0] // 2


def _form_product(X) -> tuple:
    X = np.asarray(X)
    n = _check_even_square(X)
    J = symplectic_form(n)
    return exact_matmul(exact_matmul(X.T, J), X), J


def is_symplectic(M) -> bool:
    """``M^T J M == J`` exactly."""
    P, J = _form_product(M)
    return bool(np.array_equal(P, J))


def is_anti_symplectic(L) -> bool:
    """``L^T J L == -J`` exactly."""
    P, J = _form_product(L)
    return bool(np.array_equal(P, -J))


def symplectic_inverse(M) -> np.ndarray:
    """``M^{-1} = -J M^T J``, exact for any symplectic ``M``."""
    M = np.asarray(M)
    J = symplectic_form(_check_even_square(M))
    return -exact_matmul(exact_matmul(J, M.T), J)


def eigen_relation_check(C, tol: float = 1e-9, dense_limit: int = 8) -> bool:
    """Check ``rho + 1/rho = 2 + mu^2`` for each coupling eigenvalue ``mu``.

    For ``n <= dense_limit`` the multiset of ``rho_+/-`` is also compared with
    the eigenvalues of the dense evolution matrix.
    """
    from .spectral import eigenvalues_closed_form, rho_pair

    if isinstance(C, CirculantMatrix):
        g = GeneratingVector(C.first_row)
    elif isinstance(C, GeneratingVector):
        g = C
    else:
        row = np.asarray(C)[0]
        g = GeneratingVector(tuple(row.tolist()))
        if not np.array_equal(CirculantMatrix(g.bits).dense(), np.asarray(C)):
            raise ValueError("eigen_relation_check expects a binary circulant coupling")
    mus = np.asarray(eigenvalues_closed_form(g).d)
    rhos = []
    for mu in mus:
        rp, rm = rho_pair(mu)
        for rho in (rp, rm):
            if abs(rho + 1.0 / rho - (2.0 + mu * mu)) > tol * max(1.0, 2.0 + mu * mu):
                return False
        rhos.extend((rp, rm))
    if g.n <= dense_limit:
        lam = np.linalg.eigvalsh(build_M(g).matrix.astype(float))
        rhos = np.sort(np.asarray(rhos))
        scale = max(1.0, float(np.abs(lam).max()))
        if not np.all(np.abs(np.sort(lam) - rhos) <= tol * scale):
            return False
    return True
