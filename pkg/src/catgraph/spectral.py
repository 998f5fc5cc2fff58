"""Coupling eigenvalues, per-mode growth factors, Lyapunov spectra and K-S entropy.

Exponents are per application of the evolution matrix ``M``. For the single
cat map this is ``ln((3 + sqrt 5) / 2)``, twice the exponent of one step of
the Fibonacci matrix.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .graph import GeneratingVector, _require_symmetric

__all__ = [
    "CouplingSpectrum",
    "LyapunovSpectrum",
    "SpectrumReport",
    "eigenvalues_closed_form",
    "eigenvalues_dft",
    "ks_entropy",
    "lyapunov_exponent",
    "lyapunov_spectrum",
    "rho_pair",
    "sorted_spectrum",
    "spectrum_report",
]

DFT_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class CouplingSpectrum:
    n: int
    d: tuple


@dataclass(frozen=True)
class LyapunovSpectrum:
    n: int
    lambda_plus: tuple


def eigenvalues_closed_form(g: GeneratingVector) -> CouplingSpectrum:
    """Cosine-sum eigenvalues of the symmetric circulant generated by ``g``."""
    _require_symmetric(g)
    n = g.n
    bits = np.asarray(g.bits, dtype=float)
    half = (n - 1) // 2
    j = np.arange(n // 2 + 1)[:, None]
    l = np.arange(1, half + 1)[None, :]
    d = bits[0] + 2.0 * (np.cos(2.0 * np.pi * j * l / n) @ bits[1 : half + 1])
    if n % 2 == 0:
        d = d + bits[n // 2] * np.where(j[:, 0] % 2 == 0, 1.0, -1.0)
    # modes j and n-j share one evaluation so paired modes agree exactly
    d = d[np.minimum(np.arange(n), n - np.arange(n))]
    return CouplingSpectrum(n, tuple(float(x) for x in d))


def eigenvalues_dft(g: GeneratingVector) -> CouplingSpectrum:
    """Eigenvalues ``sum_l g_l w^{jl}`` by FFT; imaginary parts must vanish."""
    _require_symmetric(g)
    # sum_l g_l exp(+2 pi i j l / n) is n * ifft(g)
    z = np.fft.ifft(np.asarray(g.bits, dtype=float)) * g.n
    resid = float(np.abs(z.imag).max())
    if resid > DFT_IMAG_TOL:
        raise ValueError(f"DFT eigenvalues have imaginary residue {resid:.3g}; vector asymmetric or corrupted")
    return CouplingSpectrum(g.n, tuple(float(x) for x in z.real))


def rho_pair(d: float) -> tuple:
    """Roots ``rho_+ >= 1`` and ``rho_- = 1 / rho_+`` of ``rho^2 - (2 + d^2) rho + 1``."""
    a = abs(float(d))
    rho_plus = 1.0 + 0.5 * a * a + 0.5 * a * math.sqrt(a * a + 4.0)
    return rho_plus, 1.0 / rho_plus


def lyapunov_exponent(d: float) -> float:
    """``ln rho_+(d)``, evaluated with ``log1p`` so small ``|d|`` keeps precision."""
    a = abs(float(d))
    return math.log1p(0.5 * a * a + 0.5 * a * math.sqrt(a * a + 4.0))


def lyapunov_spectrum(spec: CouplingSpectrum) -> LyapunovSpectrum:
    return LyapunovSpectrum(spec.n, tuple(lyapunov_exponent(d) for d in spec.d))


def ks_entropy(spec: LyapunovSpectrum) -> float:
    return math.fsum(spec.lambda_plus)


def sorted_spectrum(spec: LyapunovSpectrum) -> tuple:
    """Exponents in descending order; ties keep mode order."""
    order = sorted(range(spec.n), key=lambda k: -spec.lambda_plus[k])
    return tuple(spec.lambda_plus[k] for k in order)


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    g: GeneratingVector
    d: tuple
    lam: tuple
    S_KS: float
    edges: tuple = ()

    @property
    def sorted_lambda(self) -> tuple:
        return sorted_spectrum(LyapunovSpectrum(self.n, self.lam))

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "g": list(self.g.bits),
            "d": list(self.d),
            "lambda": list(self.lam),
            "lambda_sorted": list(self.sorted_lambda),
            "S_KS": self.S_KS,
        }
        if self.edges:
            out["edges"] = [list(e) for e in self.edges]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mode", "d", "lambda"])
        for k in range(self.n):
            w.writerow([k, repr(self.d[k]), repr(self.lam[k])])
        return buf.getvalue()


def spectrum_report(g: GeneratingVector, with_edges: bool = False) -> SpectrumReport:
    cs = eigenvalues_closed_form(g)
    ls = lyapunov_spectrum(cs)
    edges = ()
    if with_edges:
        n = g.n
        edges = tuple((i, j) for i in range(n) for j in range(i, n) if g.bits[(j - i) % n])
    return SpectrumReport(n=g.n, g=g, d=cs.d, lam=ls.lambda_plus, S_KS=ks_entropy(ls), edges=edges)
