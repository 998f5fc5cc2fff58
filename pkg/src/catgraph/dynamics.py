"""Exact evolution on the finite torus and the real-valued normal-mode solution.

States are row vectors ``x = (q, p)`` and one step is ``x -> x M``. Rational
points with denominator ``N`` are held as integer numerators in ``[0, N)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .graph import GeneratingVector, as_coupling_dense
from .spectral import eigenvalues_closed_form, rho_pair
from .symplectic import EvolutionMatrix, exact_matmul

__all__ = [
    "CENSORED",
    "RealState",
    "TorusState",
    "direct_positions",
    "newton_residual",
    "normal_mode_solution",
    "orbit_period",
    "step_mod",
    "step_real",
    "trajectory",
]

CENSORED = None
"""Returned by :func:`orbit_period` when the cutoff is reached."""

DEFAULT_CUTOFF = 10**6


@dataclass(frozen=True)
class TorusState:
    n: int
    N: int
    k: tuple
    l: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        k = tuple(int(x) for x in self.k)
        l = tuple(int(x) for x in self.l)
        if len(k) != self.n or len(l) != self.n:
            raise ValueError(f"expected {self.n} positions and momenta, got {len(k)} and {len(l)}")
        if any(not 0 <= x < self.N for x in k + l):
            raise ValueError(f"numerators must lie in [0, {self.N})")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @classmethod
    def from_vector(cls, x, N: int) -> "TorusState":
        x = [int(v) % N for v in x]
        n = len(x) // 2
        return cls(n, N, tuple(x[:n]), tuple(x[n:]))

    def vector(self) -> np.ndarray:
        return np.array(self.k + self.l, dtype=np.int64)

    def point(self) -> np.ndarray:
        """Physical coordinates in ``[0, 1)^{2n}``."""
        return self.vector() / self.N


@dataclass(frozen=True, eq=False)
class RealState:
    q: np.ndarray
    p: np.ndarray

    @property
    def n(self) -> int:
        return len(self.q)


def _matrix(M) -> np.ndarray:
    return M.matrix if isinstance(M, EvolutionMatrix) else np.asarray(M, dtype=np.int64)


def step_mod(s: TorusState, M) -> TorusState:
    A = _matrix(M)
    if A.shape != (2 * s.n, 2 * s.n):
        raise ValueError(f"state of {s.n} nodes does not match matrix of shape {A.shape}")
    y = exact_matmul(s.vector()[None, :], A % s.N)[0] % s.N
    return TorusState.from_vector(y, s.N)


def trajectory(s: TorusState, M, steps: int) -> list:
    """``[s, sM, ..., sM^steps]``."""
    out = [s]
    for _ in range(steps):
        s = step_mod(s, M)
        out.append(s)
    return out


def orbit_period(s: TorusState, M, cutoff: int = DEFAULT_CUTOFF) -> Optional[int]:
    """Smallest ``t >= 1`` with ``s M^t = s``, or :data:`CENSORED` past ``cutoff``."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    A = _matrix(M) % s.N
    if A.shape != (2 * s.n, 2 * s.n):
        raise ValueError(f"state of {s.n} nodes does not match matrix of shape {A.shape}")
    kernels.check_int64_budget(2 * s.n, s.N - 1, s.N - 1, s.N)
    t = int(kernels.orbit_scan(s.vector(), np.ascontiguousarray(A, dtype=np.int64), int(s.N), int(cutoff)))
    return t if t > 0 else CENSORED


def step_real(s: RealState, C) -> RealState:
    """One step in real arithmetic, no reduction mod 1."""
    A = np.asarray(as_coupling_dense(C), dtype=float)
    q = s.q + s.p @ A
    p = s.q @ A + s.p @ (np.eye(len(A)) + A @ A)
    return RealState(q, p)


def newton_residual(q_prev, q_now, q_next, C, N: Optional[int] = None) -> np.ndarray:
    """``q_next - 2 q_now + q_prev - q_now C^2``, reduced mod ``N`` when given."""
    A = as_coupling_dense(C)
    if N is None and any(np.asarray(v).dtype.kind == "f" for v in (q_prev, q_now, q_next)):
        A = A.astype(float)
        C2 = A @ A
        return np.asarray(q_next) - 2 * np.asarray(q_now) + np.asarray(q_prev) - np.asarray(q_now) @ C2
    qp, qn, qx = (np.asarray(v, dtype=np.int64) for v in (q_prev, q_now, q_next))
    if not (qp.shape == qn.shape == qx.shape == (A.shape[0],)):
        raise ValueError("position vectors must match the coupling dimension")
    C2 = exact_matmul(A, A)
    if N is not None:
        C2 = C2 % N
    r = qx - 2 * qn + qp - exact_matmul(qn[None, :], C2)[0]
    return (r % N).astype(np.int64) if N is not None else r


def direct_positions(q0, q1, C, m: int) -> np.ndarray:
    """``q_m`` from iterating ``q_{k+1} = 2 q_k - q_{k-1} + q_k C^2`` in floats."""
    A = np.asarray(as_coupling_dense(C), dtype=float)
    C2 = A @ A
    prev, cur = np.asarray(q0, dtype=float), np.asarray(q1, dtype=float)
    if m == 0:
        return prev.copy()
    for _ in range(m - 1):
        prev, cur = cur, 2 * cur - prev + cur @ C2
    return cur


def normal_mode_solution(q0, q1, g: GeneratingVector, m: int, zero_tol: float = 1e-9) -> np.ndarray:
    """Positions ``q_m`` from the per-mode closed form.

    Each Fourier mode obeys ``r_{k+1} = (2 + d^2) r_k - r_{k-1}``; modes with
    ``|d| <= zero_tol`` have the double root 1 and grow linearly.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    d = np.asarray(eigenvalues_closed_form(g).d)
    # any unitary DFT diagonalises a symmetric circulant: d_j = d_{n-j}
    r0 = np.fft.fft(q0)
    r1 = np.fft.fft(q1)
    rm = np.empty_like(r0)
    for j, dj in enumerate(d):
        if abs(dj) <= zero_tol:
            rm[j] = r0[j] + m * (r1[j] - r0[j])
            continue
        rp, rn = rho_pair(dj)
        a_plus = (r1[j] - rn * r0[j]) / (rp - rn)
        a_minus = r0[j] - a_plus
        rm[j] = a_plus * rp**m + a_minus * rn**m
    return np.fft.ifft(rm).real
