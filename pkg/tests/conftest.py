import numpy as np
import pytest

from catgraph.graph import GeneratingVector


def random_symmetric_bits(n, rng, self_loop=None):
    """Uniform random symmetric binary generating vector (oracle-side sampler)."""
    bits = np.zeros(n, dtype=np.int64)
    bits[0] = rng.integers(0, 2) if self_loop is None else int(self_loop)
    for l in range(1, n // 2 + 1):
        b = rng.integers(0, 2)
        bits[l] = b
        bits[n - l] = b
    return GeneratingVector(tuple(bits.tolist()))


def bareiss_det(A):
    """Fraction-free integer determinant."""
    M = [[int(x) for x in row] for row in np.asarray(A)]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def brute_period(M, N, limit=10**6):
    """Smallest T with M^T = I mod N by repeated dense multiplication."""
    M = np.asarray(M).astype(object) % N
    eye = np.eye(M.shape[0], dtype=np.int64).astype(object)
    P = M.copy()
    for t in range(1, limit + 1):
        if np.array_equal(P % N, eye % N):
            return t
        P = (P @ M) % N
    raise AssertionError("no period below limit")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
