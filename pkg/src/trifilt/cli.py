"""Command-line surface: compute, verify, generate, bench."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import fit_slopes, peak_memory_mb, rows_to_csv, run_bench
from .datasets import DATASETS, FUNCTIONS, compute_function, generate_dataset, interlevel
from .errors import TrifiltError
from .io import RunConfig, parse_input, render_scc2020
from .pipeline import build_trifiltration
from .verify import run_verification


def _common_flags(p):
    p.add_argument("--dim", type=int, default=None,
                   help="force the point dimension (default: infer)")
    p.add_argument("--seed", type=int, default=0,
                   help="perturbation / sampling seed")
    p.add_argument("--perturb", type=float, default=1e-9,
                   help="relative perturbation magnitude")
    p.add_argument("--frame-scale", type=float, default=1e4,
                   help="frame circumradius in bounding-box diameters")


def make_parser():
    ap = argparse.ArgumentParser(
        prog="trifilt",
        description="Sublevel Delaunay and Delaunay-Cech trifiltrations "
                    "of bi-filtered point clouds")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="build a trifiltration and write scc2020")
    p.add_argument("input", help="input text file ('-' for stdin)")
    p.add_argument("--filtration", choices=["del", "delcech", "both"],
                   default="delcech")
    p.add_argument("--algorithm", choices=["naive", "nonlocal", "local"],
                   default="local")
    p.add_argument("--interlevel", action="store_true",
                   help="input carries one value per point; filter its "
                        "two-sided sublevel sets")
    p.add_argument("-o", "--output", required=True, help="output path")
    _common_flags(p)

    p = sub.add_parser("verify", help="run the brute-force oracle suite")
    p.add_argument("input", help="input text file ('-' for stdin)")
    p.add_argument("--interlevel", action="store_true")
    p.add_argument("--max-points", type=int, default=12,
                   help="subsample cap for the oracle scale")
    p.add_argument("--samples", type=int, default=20,
                   help="homology comparison sample count")
    _common_flags(p)

    p = sub.add_parser("generate", help="emit a synthetic dataset file")
    p.add_argument("--dataset", choices=DATASETS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--function", choices=FUNCTIONS, default="height")
    p.add_argument("--function2", choices=FUNCTIONS, default=None,
                   help="second value column (default: two-sided wrap of "
                        "the first)")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("bench", help="scaling benchmark grid")
    p.add_argument("--dataset", default="circle",
                   help="comma-separated dataset names")
    p.add_argument("--function", default="height",
                   help="comma-separated function names")
    p.add_argument("--sizes", default="100,200,400",
                   help="comma-separated point counts")
    p.add_argument("--algorithm", choices=["naive", "nonlocal", "local"],
                   default="local")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    return ap


def _read_input(args, gamma_columns):
    if args.input == "-":
        return parse_input(sys.stdin, dim=args.dim, gamma_columns=gamma_columns)
    return parse_input(args.input, dim=args.dim, gamma_columns=gamma_columns)


def _cmd_compute(args):
    cols = 1 if args.interlevel else 2
    points, values = _read_input(args, cols)
    cfg = RunConfig(filtration=args.filtration, strategy=args.algorithm,
                    dim=args.dim, seed=args.seed, perturb=args.perturb,
                    frame_scale=args.frame_scale, interlevel=args.interlevel,
                    output=args.output)
    res = build_trifiltration(points, values, cfg, record_points=False)
    out = Path(args.output)
    for kind, filt in sorted(res.filtrations.items()):
        path = out
        if len(res.filtrations) > 1:
            path = out.with_name(f"{out.stem}.{kind}{out.suffix}")
        comments = [f"trifilt {__version__}",
                    f"kind={kind} strategy={args.algorithm} seed={args.seed} "
                    f"perturb={args.perturb!r} frame_scale={args.frame_scale!r} "
                    f"interlevel={args.interlevel}"]
        path.write_bytes(render_scc2020(filt, comments))
        print(f"{path}: {len(filt.records)} generators "
              f"({res.timings['total_s']:.3f}s)")
    return 0


def _cmd_verify(args):
    cols = 1 if args.interlevel else 2
    points, values = _read_input(args, cols)
    if args.interlevel:
        values = interlevel(v[0] for v in values)
    cfg = RunConfig(dim=args.dim, seed=args.seed, perturb=args.perturb,
                    frame_scale=args.frame_scale)
    report = run_verification(points, values, cfg,
                              max_points=args.max_points, samples=args.samples)
    for line in report.lines():
        print(line)
    return 2 if report.mismatches else 0


def _cmd_generate(args):
    pts = generate_dataset(args.dataset, args.n, args.seed)
    delta = compute_function(pts, args.function, args.seed)
    if args.function2 is not None:
        second = compute_function(pts, args.function2, args.seed + 1)
        values = list(zip(delta, second))
    else:
        values = interlevel(delta)
    with open(args.output, "w") as fh:
        fh.write(f"# {args.dataset} n={args.n} seed={args.seed} "
                 f"f1={args.function} "
                 f"f2={args.function2 or 'two-sided ' + args.function}\n")
        for p, (a, b) in zip(pts, values):
            fh.write(" ".join(repr(c) for c in p) + f" {a!r} {b!r}\n")
    print(f"{args.output}: {args.n} points")
    return 0


def _cmd_bench(args):
    datasets = [s for s in args.dataset.split(",") if s]
    functions = [s for s in args.function.split(",") if s]
    sizes = [int(s) for s in args.sizes.split(",") if s]
    cells = [(ds, fn) for ds in datasets for fn in functions]
    rows = run_bench(cells, sizes, seed=args.seed, strategy=args.algorithm)
    text = rows_to_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    for (ds, fn), s in sorted(fit_slopes(rows).items()):
        print(f"# {ds}/{fn}: size slope {s['size_slope']}, "
              f"time slope {s['time_slope']}", file=sys.stderr)
    print(f"# peak memory: {peak_memory_mb():.1f} MB", file=sys.stderr)
    return 0


def main(argv=None):
    args = make_parser().parse_args(argv)
    handlers = {"compute": _cmd_compute, "verify": _cmd_verify,
                "generate": _cmd_generate, "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except TrifiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
