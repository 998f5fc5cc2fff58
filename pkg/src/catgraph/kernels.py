"""Hot loops of the period engine.

Each kernel has a numba implementation (``*_numba``) and a pure-numpy one
(``*_numpy``) with identical semantics. The public names ``period_scan`` and
``orbit_scan`` are bound to one of them according to
:data:`catgraph._accel.BACKEND`.

All arrays are ``int64`` and every value is kept in ``[0, N)``. Callers are
responsible for the overflow guard in :func:`check_int64_budget`.
"""

import numpy as np

from ._accel import BACKEND, HAS_NUMBA, njit

__all__ = [
    "BACKEND",
    "check_int64_budget",
    "orbit_scan",
    "orbit_scan_numba",
    "orbit_scan_numpy",
    "period_scan",
    "period_scan_numba",
    "period_scan_numpy",
]

_INT64_MAX = np.iinfo(np.int64).max


def check_int64_budget(terms, max_a, max_b, N):
    """Raise ``OverflowError`` if ``terms * max_a * max_b + N`` can exceed int64."""
    bound = int(terms) * int(max_a) * int(max_b) + int(N)
    if bound > _INT64_MAX:
        raise OverflowError(
            f"modulus N={N} too large for exact int64 accumulation over {terms} terms"
        )


def _dense_circulant(row):
    n = row.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


@njit(cache=True, nogil=True)
def period_scan_numba(row, N, cutoff):
    """Smallest T <= cutoff with C_{2T} = 0 and C_{2T+1} = I (mod N), else 0.

    ``row`` is the first row of the coupling, already reduced mod N. The state
    (C_{m-1}, C_m) starts at (0, I) and the period is its first return there
    after an even number of steps.
    """
    n = row.shape[0]
    nz = 0
    for i in range(n):
        if row[i] != 0:
            nz += 1
    lags = np.empty(nz, dtype=np.int64)
    wts = np.empty(nz, dtype=np.int64)
    j = 0
    for i in range(n):
        if row[i] != 0:
            lags[j] = i
            wts[j] = row[i]
            j += 1

    prev = np.zeros(n, dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    cur[0] = 1 % N
    nxt = np.empty(n, dtype=np.int64)
    for t in range(1, cutoff + 1):
        for _ in range(2):
            for i in range(n):
                nxt[i] = prev[i]
            for a in range(nz):
                lag = lags[a]
                w = wts[a]
                for i in range(n):
                    k = i + lag
                    if k >= n:
                        k -= n
                    nxt[k] += w * cur[i]
            for i in range(n):
                prev[i] = cur[i]
                cur[i] = nxt[i] % N
        if cur[0] != 1 % N or prev[0] != 0:
            continue
        hit = True
        for i in range(1, n):
            if cur[i] != 0 or prev[i] != 0:
                hit = False
                break
        if hit:
            return t
    return 0


def period_scan_numpy(row, N, cutoff):
    """Numpy twin of :func:`period_scan_numba`."""
    row = np.asarray(row, dtype=np.int64)
    n = row.shape[0]
    W = _dense_circulant(row)
    eye = np.zeros(n, dtype=np.int64)
    eye[0] = 1 % N
    prev = np.zeros(n, dtype=np.int64)
    cur = eye.copy()
    for t in range(1, cutoff + 1):
        nxt = (cur @ W + prev) % N
        prev, cur = nxt, (nxt @ W + cur) % N
        if not prev.any() and np.array_equal(cur, eye):
            return t
    return 0


@njit(cache=True, nogil=True)
def orbit_scan_numba(x0, M, N, cutoff):
    """Smallest t <= cutoff with x0 M^t = x0 (mod N), else 0. Row-vector action."""
    d = x0.shape[0]
    x = x0.copy()
    y = np.empty(d, dtype=np.int64)
    for t in range(1, cutoff + 1):
        for j in range(d):
            acc = 0
            for i in range(d):
                acc += x[i] * M[i, j]
            y[j] = acc % N
        same = True
        for j in range(d):
            x[j] = y[j]
            if y[j] != x0[j]:
                same = False
        if same:
            return t
    return 0


def orbit_scan_numpy(x0, M, N, cutoff):
    """Numpy twin of :func:`orbit_scan_numba`."""
    x0 = np.asarray(x0, dtype=np.int64)
    M = np.asarray(M, dtype=np.int64)
    x = x0
    for t in range(1, cutoff + 1):
        x = (x @ M) % N
        if np.array_equal(x, x0):
            return t
    return 0


if BACKEND == "numba":
    period_scan = period_scan_numba
    orbit_scan = orbit_scan_numba
else:
    period_scan = period_scan_numpy
    orbit_scan = orbit_scan_numpy

if not HAS_NUMBA:  # pragma: no cover
    period_scan_numba = period_scan_numpy
    orbit_scan_numba = orbit_scan_numpy
