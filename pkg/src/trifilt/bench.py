"""Scaling benchmarks over the synthetic dataset/function grid.

Each cell samples a dataset, computes one scalar function, wraps it as the
symmetric two-sided filtration, and runs the full pipeline, timing the scan
and the birth phases.  Rows come back as CSV; log-log slopes of complex
size and total time against the input size summarize the growth.
"""

from __future__ import annotations

import csv
import io as _io
import os
import resource
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .datasets import compute_function, generate_dataset
from .io import RunConfig
from .pipeline import build_trifiltration

CSV_HEADER = ["dataset", "function", "n", "incr_size",
              "scan_s", "omega_s", "total_s"]


def bench_cell(dataset, function, n, seed=0, strategy="local"):
    pts = generate_dataset(dataset, n, seed)
    delta = compute_function(pts, function, seed)
    cfg = RunConfig(filtration="del", strategy=strategy, seed=seed,
                    interlevel=True)
    res = build_trifiltration(pts, delta, cfg, record_points=False)
    t = res.timings
    return {"dataset": dataset, "function": function, "n": n,
            "incr_size": len(res.incr),
            "scan_s": round(t["scan_s"], 3),
            "omega_s": round(t["omega_s"], 3),
            "total_s": round(t["total_s"], 3)}


def _cell(args):
    return bench_cell(*args)


def run_bench(cells, sizes, seed=0, strategy="local", threads=None):
    """Rows for every (dataset, function) x size; sorted deterministically."""
    if threads is None:
        threads = max(1, int(os.environ.get("TRIFILT_THREADS", "1")))
    jobs = [(ds, fn, n, seed, strategy) for ds, fn in cells for n in sizes]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_cell, jobs))
    else:
        rows = [_cell(j) for j in jobs]
    rows.sort(key=lambda r: (r["dataset"], r["function"], r["n"]))
    return rows


def fit_slopes(rows):
    """Least-squares slope of log(size) and log(time) against log(n),
    per (dataset, function) family."""
    series = {}
    for r in rows:
        series.setdefault((r["dataset"], r["function"]), []).append(r)
    out = {}
    for key, rs in series.items():
        ns = np.log([r["n"] for r in rs])
        size_slope = float(np.polyfit(ns, np.log([r["incr_size"] for r in rs]), 1)[0])
        times = [max(r["total_s"], 1e-3) for r in rs]
        time_slope = float(np.polyfit(ns, np.log(times), 1)[0])
        out[key] = {"size_slope": round(size_slope, 3),
                    "time_slope": round(time_slope, 3)}
    return out


def rows_to_csv(rows) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER)
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def peak_memory_mb():
    usage = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # ru_maxrss is KiB on Linux, bytes on macOS
    scale = 1024.0 if sys.platform != "darwin" else 1024.0 * 1024.0
    return usage / scale
