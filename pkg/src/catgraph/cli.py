"""Command-line interface: ``catgraph <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 every period result censored.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .dynamics import TorusState, trajectory
from .experiments import (
    ENTROPY_COLUMNS,
    appendix_b_csv,
    appendix_b_svg,
    entropy_svg,
    run_appendix_b,
    run_entropy_vs_n,
    run_integer_graph,
    run_period_figures,
    to_csv,
    to_json,
)
from .graph import GeneratingVector, stride_vector
from .periods import DEFAULT_CUTOFF, MAX_CUTOFF
from .spectral import spectrum_report
from .symplectic import build_M

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CENSORED = 3

log = logging.getLogger("catgraph")


class InvalidInput(Exception):
    pass


def parse_range(text: str) -> list:
    """``"a..b"`` or ``"a..b:step"`` (inclusive), or a comma list ``"2,3,5"``."""
    text = text.strip()
    try:
        if ".." in text:
            body, _, step = text.partition(":")
            lo, hi = body.split("..")
            return list(range(int(lo), int(hi) + 1, int(step) if step else 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"bad range {text!r}: expected a..b, a..b:step or a comma list") from exc


def parse_ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"bad integer list {text!r}") from exc


def _vector(args) -> GeneratingVector:
    if getattr(args, "g", None):
        return GeneratingVector.from_bitstring(args.g)
    if args.n is None or args.stride is None:
        raise InvalidInput("give --g BITS, or --n and --stride")
    strides = parse_ints(args.stride)
    if len(strides) != 1:
        raise InvalidInput("exactly one --stride is needed here")
    return stride_vector(args.n, strides[0], args.self_loops, args.variant)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_fmt(fmt: str, allowed: Sequence[str]) -> None:
    if fmt not in allowed:
        raise InvalidInput(f"format {fmt!r} not supported here; choose from {', '.join(allowed)}")


def cmd_spectrum(args) -> int:
    _check_fmt(args.format, ("csv", "json"))
    rep = spectrum_report(_vector(args), with_edges=args.format == "json")
    _emit(rep.to_csv() if args.format == "csv" else rep.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    _check_fmt(args.format, ("csv", "json"))
    rep = run_integer_graph(args.m)
    _emit(rep.to_csv() if args.format == "csv" else rep.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_entropy_sweep(args) -> int:
    strides = parse_ints(args.stride or "1,2,3,4,5")
    rows = run_entropy_vs_n(strides, args.self_loops, parse_range(args.n_range), args.variant, args.workers)
    if args.format == "csv":
        text = to_csv(rows, ENTROPY_COLUMNS)
    elif args.format == "json":
        text = to_json({"strides": strides, "self_loops": bool(args.self_loops), "rows": rows})
    else:
        text = entropy_svg(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_period_sweep(args) -> int:
    if args.cutoff < 1 or args.cutoff > MAX_CUTOFF:
        raise InvalidInput(f"--cutoff must lie in 1..{MAX_CUTOFF}")
    if args.kind == "sweep_N":
        if args.N_range is None:
            raise InvalidInput("sweep_N needs --N-range")
        rep = run_period_figures(
            "sweep_N", g=_vector(args), N_range=parse_range(args.N_range), cutoff=args.cutoff, workers=args.workers
        )
    else:
        if args.N is None:
            raise InvalidInput("sweep_n needs --N")
        rep = run_period_figures(
            "sweep_n",
            N_values=parse_ints(args.N),
            max_n=args.max_n,
            start=args.start,
            step=args.step,
            cutoff=args.cutoff,
            workers=args.workers,
        )
    text = {"csv": rep.to_csv, "json": rep.to_json, "svg": rep.to_svg}[args.format]()
    _emit(text, args.out)
    log.info("%d of %d periods censored at cutoff %d", rep.metadata["censored"], len(rep.results), args.cutoff)
    return EXIT_CENSORED if rep.all_censored else EXIT_OK


def cmd_trajectory(args) -> int:
    _check_fmt(args.format, ("csv",))
    g = _vector(args)
    if args.N is None:
        raise InvalidInput("trajectory needs --N")
    N = parse_ints(args.N)
    if len(N) != 1 or N[0] < 1:
        raise InvalidInput("trajectory needs a single positive --N")
    N = N[0]
    k = parse_ints(args.k) if args.k else [1] + [0] * (g.n - 1)
    l = parse_ints(args.l) if args.l else [0] * g.n
    s0 = TorusState(g.n, N, tuple(x % N for x in k), tuple(x % N for x in l))
    rows = []
    for t, s in enumerate(trajectory(s0, build_M(g), args.steps)):
        row = {"step": t}
        row.update({f"k_{i}": v for i, v in enumerate(s.k)})
        row.update({f"l_{i}": v for i, v in enumerate(s.l)})
        rows.append(row)
    cols = ["step"] + [f"k_{i}" for i in range(g.n)] + [f"l_{i}" for i in range(g.n)]
    _emit(to_csv(rows, cols), args.out)
    return EXIT_OK


def cmd_appendix_b(args) -> int:
    recs = run_appendix_b(
        parse_range(args.n_range), int(parse_ints(args.stride or "2")[0]), args.reps, args.seed, workers=args.workers
    )
    if args.format == "csv":
        text = appendix_b_csv(recs)
    elif args.format == "json":
        payload = {
            "seed": args.seed,
            "stride": recs[0].r if recs else None,
            "replications": args.reps,
            "records": [
                dict(rec.to_row(), samples=list(rec.samples), vectors=[v.to_bitstring() for v in rec.vectors])
                for rec in recs
            ],
        }
        text = to_json(payload)
    else:
        text = appendix_b_svg(recs)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="node count")
    common.add_argument("--stride", help="stride r, or comma list for sweeps")
    common.add_argument("--self-loops", action="store_true", help="set g_0 = 1")
    common.add_argument("--variant", choices=("paper", "prime_free", "mirrored"), default="paper", help="stride connection set")
    common.add_argument("--N", help="modulus (comma list for sweep_n overlays)")
    common.add_argument("--N-range", dest="N_range", help="moduli a..b[:step]")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="period search budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=10, help="random replications")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="catgraph", description="Coupled cat maps on circulant graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="coupling spectrum, Lyapunov exponents, K-S entropy")
    sp.add_argument("--g", help="generating vector as a bit string, e.g. 10000110000")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("encode", parents=[common], help="graph encoding a positive integer")
    sp.add_argument("m", type=int)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("entropy-sweep", parents=[common], help="K-S entropy over n for several strides")
    sp.add_argument("--n-range", dest="n_range", default="3..101:2")
    sp.set_defaults(func=cmd_entropy_sweep)

    sp = sub.add_parser("period-sweep", parents=[common], help="period spectra T(N) or T(n)")
    sp.add_argument("--kind", choices=("sweep_N", "sweep_n"), default="sweep_N")
    sp.add_argument("--g", help="generating vector (sweep_N)")
    sp.add_argument("--max-n", dest="max_n", type=int, default=50)
    sp.add_argument("--start", type=int, default=3)
    sp.add_argument("--step", type=int, default=4)
    sp.set_defaults(func=cmd_period_sweep)

    sp = sub.add_parser("trajectory", parents=[common], help="exact orbit on the finite torus")
    sp.add_argument("--g", help="generating vector")
    sp.add_argument("--k", help="position numerators, comma list")
    sp.add_argument("--l", help="momentum numerators, comma list")
    sp.add_argument("--steps", type=int, default=20)
    sp.set_defaults(func=cmd_trajectory)

    sp = sub.add_parser("appendix-b", parents=[common], help="deterministic vs random degree-matched entropy")
    sp.add_argument("--n-range", dest="n_range", default="10..60:2")
    sp.set_defaults(func=cmd_appendix_b)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInput, ValueError, OverflowError) as exc:
        print(f"catgraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
