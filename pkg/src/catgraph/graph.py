"""Generating vectors, connection sets and circulant coupling matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "AsymmetricCouplingError",
    "BccbCoupling",
    "CirculantMatrix",
    "ConnectionSet",
    "GeneratingVector",
    "adjacency",
    "asymmetric_pair",
    "bccb_assemble",
    "block_diagonal",
    "circulant_mul",
    "connection_set",
    "from_integer",
    "periodic_family",
    "stride_vector",
    "to_integer",
    "validate_symmetric",
]

_INT64_MAX = np.iinfo(np.int64).max


class AsymmetricCouplingError(ValueError):
    """A coupling that must be symmetric is not."""


@dataclass(frozen=True)
class GeneratingVector:
    """Binary first row ``(g_0, ..., g_{n-1})`` of a circulant coupling."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("generating vector must have at least one entry")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"generating vector entries must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def degree(self) -> int:
        """Number of neighbours per node, self-loop excluded."""
        return sum(self.bits[1:])

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.int64)

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_bitstring(cls, s: str) -> "GeneratingVector":
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(tuple(int(c) for c in s))

    def __str__(self) -> str:
        return self.to_bitstring()


@dataclass(frozen=True)
class CirculantMatrix:
    """Integer circulant matrix stored by its first row.

    Entry ``(i, j)`` is ``first_row[(j - i) % n]``. With ``modulus`` set, all
    entries live in ``[0, modulus)``.
    """

    first_row: tuple
    modulus: Optional[int] = None

    def __post_init__(self):
        row = tuple(int(x) for x in self.first_row)
        if not row:
            raise ValueError("circulant matrix must have dimension >= 1")
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError(f"modulus must be positive, got {self.modulus}")
            row = tuple(x % self.modulus for x in row)
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return len(self.first_row)

    def row_array(self) -> np.ndarray:
        return np.array(self.first_row, dtype=np.int64)

    def dense(self) -> np.ndarray:
        row = self.row_array()
        n = self.n
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return row[idx]

    def is_symmetric(self) -> bool:
        r = self.first_row
        return all(r[l] == r[(self.n - l) % self.n] for l in range(1, self.n))

    def __matmul__(self, other: "CirculantMatrix") -> "CirculantMatrix":
        return circulant_mul(self, other, self.modulus)

    @classmethod
    def identity(cls, n: int, modulus: Optional[int] = None) -> "CirculantMatrix":
        return cls((1,) + (0,) * (n - 1), modulus)

    @classmethod
    def zeros(cls, n: int, modulus: Optional[int] = None) -> "CirculantMatrix":
        return cls((0,) * n, modulus)

    @classmethod
    def shift(cls, n: int, modulus: Optional[int] = None) -> "CirculantMatrix":
        """Cyclic shift ``P``; for n = 1 this is the identity."""
        row = [0] * n
        row[1 % n] = 1
        return cls(tuple(row), modulus)


@dataclass(frozen=True)
class ConnectionSet:
    n: int
    r: int
    members: frozenset
    self_loops: bool = False

    def __post_init__(self):
        members = frozenset(int(k) for k in self.members)
        bad = [k for k in members if not 1 <= k <= self.n - 1]
        if bad:
            raise ValueError(f"connection set members must lie in 1..n-1, got {sorted(bad)}")
        if any((self.n - k) not in members for k in members):
            raise AsymmetricCouplingError(f"connection set {sorted(members)} is not closed under k -> n-k")
        object.__setattr__(self, "members", members)

    def to_vector(self) -> GeneratingVector:
        bits = [0] * self.n
        bits[0] = int(self.self_loops)
        for k in self.members:
            bits[k] = 1
        return GeneratingVector(tuple(bits))


@dataclass(frozen=True)
class BccbCoupling:
    """Blocks of ``[[C, B], [B^T, Cp]]`` with symmetric circulant ``C`` and ``Cp``."""

    C: CirculantMatrix
    B: CirculantMatrix
    Cp: CirculantMatrix

    @property
    def n(self) -> int:
        return self.C.n


# -- encodings ---------------------------------------------------------------


def from_integer(m: int) -> GeneratingVector:
    """Bits of ``m`` most-significant first; the leading entry is always 1."""
    m = int(m)
    if m < 1:
        raise ValueError(f"integer encoding needs m >= 1, got {m}")
    return GeneratingVector(tuple(int(c) for c in format(m, "b")))


def to_integer(g: GeneratingVector) -> int:
    """Inverse of :func:`from_integer` (reads the bits MSB first)."""
    return int(g.to_bitstring(), 2)


def asymmetric_pair(g: GeneratingVector):
    """First index pair ``(l, n-l)`` with ``g_l != g_{n-l}``, or ``None``."""
    n = g.n
    for l in range(1, n):
        if g.bits[l] != g.bits[(n - l) % n]:
            return l, n - l
    return None


def validate_symmetric(g: GeneratingVector) -> bool:
    return asymmetric_pair(g) is None


def _require_symmetric(g: GeneratingVector) -> None:
    pair = asymmetric_pair(g)
    if pair is not None:
        l, lp = pair
        raise AsymmetricCouplingError(
            f"generating vector {g} is not symmetric: g[{l}]={g.bits[l]} but g[{lp}]={g.bits[lp]}"
        )


def connection_set(n: int, r: int, self_loops: bool = False, variant: str = "paper") -> ConnectionSet:
    """Distance set of a stride-``r`` circulant graph on ``n`` nodes.

    ``variant="paper"`` keeps k with ``(k-1) % r == 0`` or ``(n-k-1) % r == 0``;
    ``variant="prime_free"`` keeps k with ``k % r == 0`` or ``(n-k) % r == 0``;
    ``variant="mirrored"`` keeps ``k <= n//2`` with ``(k-1) % r == 0`` and their
    mirrors ``n-k``.

    For odd ``n`` the ``paper`` set with ``r = 2`` is every distance, i.e. the
    complete graph; ``mirrored`` keeps stride 2 sparser than stride 1.
    """
    if n < 2:
        raise ValueError(f"stride graphs need n >= 2, got {n}")
    if r < 1:
        raise ValueError(f"stride must be >= 1, got {r}")
    if variant == "paper":
        members = {k for k in range(1, n) if (k - 1) % r == 0 or (n - k - 1) % r == 0}
    elif variant == "prime_free":
        members = {k for k in range(1, n) if k % r == 0 or (n - k) % r == 0}
    elif variant == "mirrored":
        half = {k for k in range(1, n // 2 + 1) if (k - 1) % r == 0}
        members = half | {n - k for k in half}
    else:
        raise ValueError(f"unknown stride variant {variant!r}")
    return ConnectionSet(n, r, frozenset(members), bool(self_loops))


def stride_vector(n: int, r: int, self_loops: bool = False, variant: str = "paper") -> GeneratingVector:
    return connection_set(n, r, self_loops, variant).to_vector()


def periodic_family(n: int) -> GeneratingVector:
    """Symmetric periodic vector: ``g_0 = 0``, ``g_l = 1`` for odd ``l <= n//2``, mirrored.

    n = 3 gives (0,1,1) and n = 7 gives (0,1,0,1,1,0,1); consecutive members of
    the family used in period sweeps differ in length by 4.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    bits = [0] * n
    for l in range(1, n // 2 + 1, 2):
        bits[l] = 1
        bits[n - l] = 1
    return GeneratingVector(tuple(bits))


# -- matrices ----------------------------------------------------------------


def adjacency(g: GeneratingVector) -> CirculantMatrix:
    _require_symmetric(g)
    return CirculantMatrix(g.bits)


def _checked_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    amax = int(np.abs(a).max(initial=0))
    bmax = int(np.abs(b).max(initial=0))
    if n * amax * bmax > _INT64_MAX:
        raise OverflowError("circulant product overflows int64; pass a modulus")
    # out[j] = sum_k a[k] b[(j - k) % n]
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return b[idx] @ a


def circulant_mul(a: CirculantMatrix, b: CirculantMatrix, N: Optional[int] = None) -> CirculantMatrix:
    """Product of two circulants as a circular convolution of first rows."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    ra, rb = a.row_array(), b.row_array()
    if N is not None:
        ra, rb = ra % N, rb % N
    out = _checked_conv(ra, rb)
    if N is not None:
        out %= N
    return CirculantMatrix(tuple(out.tolist()), N)


def _as_dense(C) -> np.ndarray:
    if isinstance(C, CirculantMatrix):
        return C.dense()
    if isinstance(C, GeneratingVector):
        return adjacency(C).dense()
    return np.asarray(C, dtype=np.int64)


def _require_symmetric_dense(A: np.ndarray, name: str) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise AsymmetricCouplingError(f"{name} must be symmetric")


def block_diagonal(C, Cp) -> np.ndarray:
    """``diag(C, Cp)``: two disconnected coupling graphs side by side."""
    A, Ap = _as_dense(C), _as_dense(Cp)
    _require_symmetric_dense(A, "C")
    _require_symmetric_dense(Ap, "Cp")
    n, k = A.shape[0], Ap.shape[0]
    out = np.zeros((n + k, n + k), dtype=np.int64)
    out[:n, :n] = A
    out[n:, n:] = Ap
    return out


def bccb_assemble(c: BccbCoupling) -> np.ndarray:
    """Dense ``[[C, B], [B^T, Cp]]``."""
    C, B, Cp = c.C.dense(), c.B.dense(), c.Cp.dense()
    if not (C.shape == B.shape == Cp.shape):
        raise ValueError("BCCB blocks must share one dimension")
    _require_symmetric_dense(C, "C")
    _require_symmetric_dense(Cp, "Cp")
    return np.block([[C, B], [B.T, Cp]])


def as_coupling_dense(C) -> np.ndarray:
    """Dense integer coupling from a vector, circulant, BCCB spec or array."""
    if isinstance(C, BccbCoupling):
        return bccb_assemble(C)
    return _as_dense(C)
