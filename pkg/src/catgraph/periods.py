"""Period ``T(N)`` of the evolution matrix mod ``N`` via Fibonacci polynomials of ``C``.

With ``C_0 = 0``, ``C_1 = I`` and ``C_{m+1} = C C_m + C_{m-1}``,

    M^m = [[C_{2m-1}, C_{2m}], [C_{2m}, C_{2m+1}]]

so ``M^T = I (mod N)`` exactly when ``C_{2T-1} = I`` and ``C_{2T} = 0``. Every
``C_m`` is circulant, so the scan works on first rows only.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Optional

import numpy as np

from . import kernels
from .graph import CirculantMatrix, GeneratingVector, _require_symmetric, circulant_mul, periodic_family
from .symplectic import build_M

__all__ = [
    "DEFAULT_CUTOFF",
    "FibPolyState",
    "PeriodResult",
    "dense_power_mod",
    "evol_power_blocks",
    "fib_poly_closed_form",
    "fib_poly_iter",
    "fib_poly_rows",
    "matrix_period",
    "period_sweep_N",
    "period_sweep_n",
    "scaling_law_check",
]

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 10**7
MAX_CUTOFF = 10**9
DENSE_VERIFY_MAX_N = 6


@dataclass(frozen=True)
class PeriodResult:
    N: int
    n: int
    g: GeneratingVector
    T: Optional[int]
    cutoff: int

    @property
    def censored(self) -> bool:
        return self.T is None

    def to_row(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "g": self.g.to_bitstring(),
            "T": "" if self.T is None else self.T,
            "censored": int(self.censored),
            "cutoff": self.cutoff,
        }


@dataclass(frozen=True)
class FibPolyState:
    """First rows of ``C_{m-1}`` and ``C_m`` mod ``N``."""

    C: CirculantMatrix
    prev: tuple
    curr: tuple
    m: int


def fib_poly_iter(C: CirculantMatrix, N: int) -> Iterator[FibPolyState]:
    """Yield ``(C_{m-1}, C_m)`` for ``m = 1, 2, ...`` (unbounded)."""
    C = CirculantMatrix(C.first_row, N)
    prev = CirculantMatrix.zeros(C.n, N)
    curr = CirculantMatrix.identity(C.n, N)
    m = 1
    while True:
        yield FibPolyState(C, prev.first_row, curr.first_row, m)
        nxt = circulant_mul(C, curr, N)
        prev, curr = curr, CirculantMatrix(tuple(a + b for a, b in zip(nxt.first_row, prev.first_row)), N)
        m += 1


def fib_poly_rows(C: CirculantMatrix, m_max: int, N: int) -> list:
    """``[C_0, C_1, ..., C_{m_max}]`` as circulants mod ``N``."""
    rows = [CirculantMatrix.zeros(C.n, N)]
    for st in fib_poly_iter(C, N):
        rows.append(CirculantMatrix(st.curr, N))
        if st.m >= m_max:
            break
    return rows[: m_max + 1]


def _circ_power(C: CirculantMatrix, e: int, N: int) -> CirculantMatrix:
    out = CirculantMatrix.identity(C.n, N)
    base = CirculantMatrix(C.first_row, N)
    while e:
        if e & 1:
            out = circulant_mul(out, base, N)
        base = circulant_mul(base, base, N)
        e >>= 1
    return out


def fib_poly_closed_form(C: CirculantMatrix, m: int, N: int) -> CirculantMatrix:
    """``C_m = sum_j binom(m-j-1, j) C^{m-2j-1}`` mod ``N``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    acc = np.zeros(C.n, dtype=np.int64)
    for j in range((m - 1) // 2 + 1):
        coef = comb(m - j - 1, j) % N
        if coef:
            acc = (acc + coef * _circ_power(C, m - 2 * j - 1, N).row_array()) % N
    return CirculantMatrix(tuple(acc.tolist()), N)


def dense_power_mod(A, e: int, N: int) -> np.ndarray:
    """``A^e mod N`` by square-and-multiply in Python integers."""
    A = np.asarray(A).astype(object) % N
    out = np.eye(A.shape[0], dtype=np.int64).astype(object) % N
    while e:
        if e & 1:
            out = (out @ A) % N
        A = (A @ A) % N
        e >>= 1
    return out.astype(np.int64)


def evol_power_blocks(g: GeneratingVector, m: int, N: int) -> np.ndarray:
    """``M^m mod N`` assembled from ``C_{2m-1}``, ``C_{2m}``, ``C_{2m+1}``.

    The lower-right block is ``C_{2m+1}``; with ``C_{2m-1}`` there the
    ``m = 1`` case would not reproduce ``I + C^2``.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _require_symmetric(g)
    rows = fib_poly_rows(CirculantMatrix(g.bits), 2 * m + 1, N)
    a, b, c = rows[2 * m - 1].dense(), rows[2 * m].dense(), rows[2 * m + 1].dense()
    return np.block([[a, b], [b, c]])


def matrix_period(
    g: GeneratingVector,
    N: int,
    cutoff: int = DEFAULT_CUTOFF,
    verify: Optional[bool] = None,
) -> PeriodResult:
    """Smallest ``T <= cutoff`` with ``M^T = I (mod N)``; ``T=None`` if censored.

    ``verify`` (default: ``n <= 6``) re-checks a found period with
    :func:`dense_power_mod`.
    """
    if N < 2:
        raise ValueError(f"modulus N must be >= 2, got {N}")
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    if cutoff > MAX_CUTOFF:
        raise ValueError(f"cutoff {cutoff} exceeds the supported budget {MAX_CUTOFF}")
    _require_symmetric(g)
    row = g.as_array() % N
    kernels.check_int64_budget(int(np.count_nonzero(row)) + 1, int(row.max(initial=0)) or 1, N - 1, N)
    T = int(kernels.period_scan(row, int(N), int(cutoff)))
    res = PeriodResult(N=N, n=g.n, g=g, T=T if T > 0 else None, cutoff=cutoff)
    if verify is None:
        verify = g.n <= DENSE_VERIFY_MAX_N
    if verify and not res.censored:
        M = build_M(g).matrix
        if not np.array_equal(dense_power_mod(M, res.T, N), np.eye(2 * g.n, dtype=np.int64)):
            raise RuntimeError(f"period engine disagrees with dense power for g={g}, N={N}, T={res.T}")
    return res


def _pool_map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def period_sweep_N(
    g: GeneratingVector,
    N_range: Iterable[int],
    cutoff: int = DEFAULT_CUTOFF,
    workers: int = 1,
) -> list:
    """One :class:`PeriodResult` per modulus, in ascending ``N``."""
    Ns = sorted(set(int(N) for N in N_range))
    out = _pool_map(lambda N: matrix_period(g, N, cutoff), Ns, workers)
    censored = sum(r.censored for r in out)
    if censored:
        logger.info("period_sweep_N: %d of %d results censored at cutoff %d", censored, len(out), cutoff)
    return out


def period_sweep_n(
    N: int,
    max_n: int,
    cutoff: int = DEFAULT_CUTOFF,
    start: int = 3,
    step: int = 4,
    workers: int = 1,
) -> list:
    """Periods ``T(N; n)`` over the periodic vector family, ``n = start, start+step, ...``."""
    if max_n < 3:
        raise ValueError(f"max_n must be >= 3, got {max_n}")
    if start < 1 or step < 1:
        raise ValueError("start and step must be positive")
    ns = list(range(start, max_n + 1, step))
    return _pool_map(lambda n: matrix_period(periodic_family(n), N, cutoff), ns, workers)


def scaling_law_check(
    g: GeneratingVector,
    s_max: int,
    cutoff: int = DEFAULT_CUTOFF,
    base_s: int = 1,
) -> Optional[bool]:
    """Does ``T(2^s) = 2^(s - base_s) T(2^base_s)`` hold for ``base_s < s <= s_max``?

    ``base_s=1`` is the doubling law anchored at ``N = 2``. Returns ``None``
    when the base period is censored, and ``True`` when the range is empty.
    """
    if s_max <= base_s:
        return True
    base = matrix_period(g, 2**base_s, cutoff)
    if base.censored:
        return None
    for s in range(base_s + 1, s_max + 1):
        r = matrix_period(g, 2**s, cutoff)
        if r.censored or r.T != 2 ** (s - base_s) * base.T:
            return False
    return True
