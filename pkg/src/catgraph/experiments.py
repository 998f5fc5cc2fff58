"""Figure-class experiments: entropy sweeps, integer-encoded graphs, period spectra
and the deterministic-versus-random entropy comparison.

Every function returns plain records; serialisation lives in :func:`to_csv`
and :func:`to_json` so that identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import svg
from .graph import (
    AsymmetricCouplingError,
    GeneratingVector,
    asymmetric_pair,
    from_integer,
    stride_vector,
)
from .periods import DEFAULT_CUTOFF, PeriodResult, period_sweep_N, period_sweep_n
from .spectral import SpectrumReport, eigenvalues_closed_form, ks_entropy, lyapunov_spectrum, spectrum_report

__all__ = [
    "AppendixBRecord",
    "ExperimentConfig",
    "PeriodReport",
    "entropy",
    "random_symmetric_vector",
    "run_appendix_b",
    "run_entropy_vs_n",
    "run_integer_graph",
    "run_period_figures",
    "to_csv",
    "to_json",
]

ENTROPY_COLUMNS = ("stride", "n", "self_loops", "variant", "g", "S_KS")
PERIOD_COLUMNS = ("N", "n", "g", "T", "censored", "cutoff")


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_range: tuple = ()
    strides: tuple = ()
    self_loops: bool = False
    N_range: tuple = ()
    cutoff: int = DEFAULT_CUTOFF
    seed: int = 0
    replications: int = 10
    workers: int = 1
    out: Optional[str] = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


def entropy(g: GeneratingVector) -> float:
    return ks_entropy(lyapunov_spectrum(eigenvalues_closed_form(g)))


def _pool_map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _fmt_float(x: float) -> str:
    return repr(float(x))


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt_float(row[c]) if isinstance(row[c], float) else row[c] for c in columns])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


# -- entropy sweeps ----------------------------------------------------------


def run_entropy_vs_n(
    strides: Iterable[int],
    self_loops: bool,
    n_range: Iterable[int],
    variant: str = "paper",
    workers: int = 1,
) -> list:
    """K-S entropy per ``(stride, n)``; rows sorted by stride then n."""
    strides = sorted(set(int(r) for r in strides))
    if not strides:
        raise ValueError("at least one stride is required")
    jobs = [(r, n) for r in strides for n in sorted(set(int(n) for n in n_range))]

    def job(key):
        r, n = key
        g = stride_vector(n, r, self_loops, variant)
        return {
            "stride": r,
            "n": n,
            "self_loops": int(bool(self_loops)),
            "variant": variant,
            "g": g.to_bitstring(),
            "S_KS": entropy(g),
        }

    return _pool_map(job, jobs, workers)


def entropy_svg(rows: Sequence[dict]) -> str:
    series = {}
    for row in rows:
        xs, ys = series.setdefault(f"stride {row['stride']}", ([], []))
        xs.append(row["n"])
        ys.append(row["S_KS"])
    return svg.chart(series, title="K-S entropy vs n", xlabel="n", ylabel="S_KS")


def run_integer_graph(m: int) -> SpectrumReport:
    """Spectrum report for the circulant graph whose generating vector encodes ``m``."""
    g = from_integer(m)
    pair = asymmetric_pair(g)
    if pair is not None:
        l, lp = pair
        raise AsymmetricCouplingError(
            f"integer {m} encodes {g}, which is not symmetric: g[{l}]={g.bits[l]} != g[{lp}]={g.bits[lp]}"
        )
    return spectrum_report(g, with_edges=True)


# -- random vs deterministic -------------------------------------------------


def random_symmetric_vector(n: int, degree: int, rng: np.random.Generator) -> Optional[GeneratingVector]:
    """Uniform symmetric binary vector with ``g_0 = 0`` and exactly ``degree`` ones.

    Mirror pairs ``(l, n-l)`` contribute two ones; for even ``n`` the
    self-paired index ``n/2`` contributes one. Returns ``None`` when no such
    vector exists.
    """
    pairs = list(range(1, (n - 1) // 2 + 1))
    has_middle = n % 2 == 0 and n >= 2
    use_middle = degree % 2 == 1
    if degree < 0 or (use_middle and not has_middle):
        return None
    k = (degree - int(use_middle)) // 2
    if k > len(pairs):
        return None
    bits = [0] * n
    if use_middle:
        bits[n // 2] = 1
    for l in rng.choice(len(pairs), size=k, replace=False) if k else ():
        bits[pairs[l]] = 1
        bits[n - pairs[l]] = 1
    return GeneratingVector(tuple(bits))


@dataclass(frozen=True)
class AppendixBRecord:
    n: int
    r: int
    degree: int
    seed: int
    S_det: float
    S_det_prime_free: float
    samples: tuple = ()
    vectors: tuple = field(default=(), repr=False)
    skipped: bool = False

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples)) if self.samples else float("nan")

    def to_row(self) -> dict:
        row = {
            "n": self.n,
            "stride": self.r,
            "degree": self.degree,
            "seed": self.seed,
            "S_det": self.S_det,
            "S_det_prime_free": self.S_det_prime_free,
            "S_random_mean": self.mean,
            "skipped": int(self.skipped),
        }
        for i, s in enumerate(self.samples):
            row[f"sample_{i}"] = s
        return row


def run_appendix_b(
    n_range: Iterable[int],
    r: int = 2,
    replications: int = 10,
    seed: int = 0,
    degree: Optional[int] = None,
    workers: int = 1,
) -> list:
    """Entropy of stride-``r`` graphs against degree-matched random symmetric graphs.

    The target degree is that of the ``S_r`` vector unless ``degree`` is given.
    Each ``n`` draws from its own generator seeded by ``(seed, n)``.
    """
    if replications < 1:
        raise ValueError(f"replications must be >= 1, got {replications}")
    ns = sorted(set(int(n) for n in n_range))

    def job(n):
        det = stride_vector(n, r, False, "paper")
        det_pf = stride_vector(n, r, False, "prime_free")
        target = det.degree if degree is None else int(degree)
        rng = np.random.default_rng([seed, n])
        vecs = []
        for _ in range(replications):
            v = random_symmetric_vector(n, target, rng)
            if v is None:
                return AppendixBRecord(n, r, target, seed, entropy(det), entropy(det_pf), skipped=True)
            vecs.append(v)
        return AppendixBRecord(
            n=n,
            r=r,
            degree=target,
            seed=seed,
            S_det=entropy(det),
            S_det_prime_free=entropy(det_pf),
            samples=tuple(entropy(v) for v in vecs),
            vectors=tuple(vecs),
        )

    return _pool_map(job, ns, workers)


def appendix_b_columns(records: Sequence[AppendixBRecord]) -> tuple:
    reps = max((len(rec.samples) for rec in records), default=0)
    base = ("n", "stride", "degree", "seed", "S_det", "S_det_prime_free", "S_random_mean", "skipped")
    return base + tuple(f"sample_{i}" for i in range(reps))


def appendix_b_csv(records: Sequence[AppendixBRecord]) -> str:
    cols = appendix_b_columns(records)
    rows = []
    for rec in records:
        row = rec.to_row()
        rows.append({c: row.get(c, "") for c in cols})
    return to_csv(rows, cols)


def appendix_b_svg(records: Sequence[AppendixBRecord]) -> str:
    live = [rec for rec in records if not rec.skipped]
    ns = [rec.n for rec in live]
    series = {
        "S_r": (ns, [rec.S_det for rec in live]),
        "S'_r": (ns, [rec.S_det_prime_free for rec in live]),
        "random (mean)": (ns, [rec.mean for rec in live]),
    }
    return svg.chart(series, title="Deterministic vs random K-S entropy", xlabel="n", ylabel="S_KS")


# -- period figures ----------------------------------------------------------


@dataclass(frozen=True)
class PeriodReport:
    kind: str
    results: tuple
    metadata: dict

    @property
    def all_censored(self) -> bool:
        return bool(self.results) and all(r.censored for r in self.results)

    def rows(self) -> list:
        return [r.to_row() for r in self.results]

    def to_csv(self) -> str:
        return to_csv(self.rows(), PERIOD_COLUMNS)

    def to_json(self) -> str:
        return to_json({"metadata": self.metadata, "results": self.rows()})

    def to_svg(self) -> str:
        series = {}
        if self.kind == "sweep_N":
            label = self.results[0].g.to_bitstring() if self.results else "T(N)"
            series[f"g={label}"] = ([r.N for r in self.results], [r.T for r in self.results])
            xlabel = "N"
        else:
            for r in self.results:
                xs, ys = series.setdefault(f"N={r.N}", ([], []))
                xs.append(r.n)
                ys.append(r.T)
            xlabel = "n"
        return svg.chart(series, title="Period spectrum", xlabel=xlabel, ylabel="T", scatter=True, log_y=True)


def run_period_figures(
    kind: str,
    g: Optional[GeneratingVector] = None,
    N_range: Iterable[int] = (),
    N_values: Iterable[int] = (),
    max_n: int = 50,
    start: int = 3,
    step: int = 4,
    cutoff: int = DEFAULT_CUTOFF,
    workers: int = 1,
) -> PeriodReport:
    """``kind="sweep_N"`` scans moduli for one vector; ``kind="sweep_n"`` scans the
    periodic vector family for each modulus in ``N_values``."""
    if kind == "sweep_N":
        if g is None:
            raise ValueError("sweep_N needs a generating vector")
        results = period_sweep_N(g, N_range, cutoff, workers)
    elif kind == "sweep_n":
        Ns = sorted(set(int(N) for N in N_values))
        if not Ns:
            raise ValueError("sweep_n needs at least one modulus")
        results = [r for N in Ns for r in period_sweep_n(N, max_n, cutoff, start, step, workers)]
    else:
        raise ValueError(f"unknown period figure kind {kind!r}")
    censored = sum(r.censored for r in results)
    meta = {"kind": kind, "cutoff": cutoff, "results": len(results), "censored": censored}
    return PeriodReport(kind, tuple(results), meta)


def period_results_csv(results: Sequence[PeriodResult]) -> str:
    return to_csv([r.to_row() for r in results], PERIOD_COLUMNS)
