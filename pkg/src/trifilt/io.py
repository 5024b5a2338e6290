"""Input parsing, preparation (perturbation, frame), and scc2020 output.

The preparation step realizes the general-position and injectivity
assumptions: coordinates are jittered by seeded uniform noise and snapped
to a power-of-two lattice sized so that every coordinate, frame included,
is an integer below 2**52; function-value ties are broken by point index.
The frame is a near-regular simplex of circumradius frame_scale times the
bounding-box diameter, centered at the data centroid, with function values
strictly below all data values in both coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import GeneralPositionError, ParseError, TrifiltError
from .orders import BiFunction, build_orders
from .points import PointCloud

_FRAME_DIRS = {
    1: [(-1.0,), (1.0,)],
    2: [(0.0, 1.0),
        (-math.sqrt(3.0) / 2.0, -0.5),
        (math.sqrt(3.0) / 2.0, -0.5)],
    3: [(s / math.sqrt(3.0) for s in signs)
        for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))],
}
_FRAME_DIRS = {d: [tuple(v) for v in vs] for d, vs in _FRAME_DIRS.items()}


@dataclass(frozen=True)
class RunConfig:
    filtration: str = "delcech"     # del | delcech | both
    strategy: str = "local"         # naive | nonlocal | local
    dim: int | None = None
    seed: int = 0
    perturb: float = 1e-9           # relative jitter; 0 keeps exact inputs
    frame_scale: float = 1e4
    interlevel: bool = False
    output: str | None = None

    def with_options(self, **kw):
        return replace(self, **kw)

    def validate(self):
        if self.filtration not in ("del", "delcech", "both"):
            raise TrifiltError(f"unknown filtration {self.filtration!r}")
        if self.strategy not in ("naive", "nonlocal", "local"):
            raise TrifiltError(f"unknown strategy {self.strategy!r}")
        if self.perturb < 0:
            raise TrifiltError("perturbation magnitude must be >= 0")
        if self.frame_scale <= 1:
            raise TrifiltError("frame scale must exceed 1")
        return self


def parse_input(source, dim=None, gamma_columns=2):
    """Whitespace-separated text: d coordinates then the function values per
    line; '#' lines and blank lines are skipped.  Returns (points, values)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    points = []
    values = []
    ncols = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        toks = line.split()
        if ncols is None:
            ncols = len(toks)
            d = dim if dim is not None else ncols - gamma_columns
            if d != ncols - gamma_columns:
                raise ParseError(
                    f"{ncols} columns do not match dimension {dim}", lineno, 1)
            if not 1 <= d <= 3:
                raise ParseError(f"dimension {d} not in 1..3", lineno, 1)
        elif len(toks) != ncols:
            raise ParseError(
                f"expected {ncols} columns, found {len(toks)}", lineno, 1)
        row = []
        for col, tok in enumerate(toks, start=1):
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(f"not a number: {tok!r}", lineno, col) from None
        if not all(math.isfinite(v) for v in row):
            raise ParseError("non-finite value", lineno, 1)
        points.append(tuple(row[:d]))
        values.append(tuple(row[d:]))
    if not points:
        raise ParseError("no data lines", 1, 1)
    return points, values


def _bbox_diameter(arr):
    span = arr.max(axis=0) - arr.min(axis=0)
    return float(np.sqrt((span * span).sum()))


def _frame_gamma(gamma, d):
    lo1 = min(float(g[0]) for g in gamma)
    lo2 = min(float(g[1]) for g in gamma)
    s1 = max(1.0, abs(lo1) * 2.0 ** -30)
    s2 = max(1.0, abs(lo2) * 2.0 ** -30)
    return [(lo1 - (d + 1 - i) * s1, lo2 - (d + 1 - i) * s2)
            for i in range(d + 1)]


def prepare(points, gamma, config: RunConfig = RunConfig()):
    """Perturbed, framed cloud plus the tie-broken orders.

    With perturb == 0 the input coordinates are kept exactly (fixture and
    oracle use); otherwise they are jittered and snapped to the lattice.
    Deterministic for a fixed seed.
    """
    config.validate()
    n = len(points)
    if n == 0 or len(gamma) != n:
        raise TrifiltError("need one function value pair per point")
    d = len(points[0])
    if config.dim is not None and config.dim != d:
        raise TrifiltError(f"points have dimension {d}, expected {config.dim}")
    if config.perturb > 0:
        cloud = _prepare_float(points, config)
    else:
        cloud = _prepare_exact(points, config)
    seen = {}
    for i in range(cloud.n_data):
        j = seen.setdefault(cloud.icoords[i], i)
        if j != i:
            raise GeneralPositionError(
                f"points {j} and {i} coincide after snapping; re-seed or "
                f"increase the perturbation")
    bifn = build_orders(list(gamma) + _frame_gamma(gamma, d), n_frame=d + 1)
    return cloud, bifn


def _prepare_float(points, config):
    arr = np.asarray(points, dtype=float)
    n, d = arr.shape
    diam = _bbox_diameter(arr)
    scale = diam if diam > 0 else 1.0
    rng = np.random.default_rng(config.seed)
    arr = arr + rng.uniform(-1.0, 1.0, (n, d)) * (config.perturb * scale)
    centroid = arr.mean(axis=0)
    arr = arr - centroid
    diam = _bbox_diameter(arr)
    if diam == 0:
        diam = scale
    qexp = (math.ceil(math.log2(diam)) + math.ceil(math.log2(config.frame_scale))
            - 51)
    quantum = Fraction(2) ** qexp
    grid = 2.0 ** qexp
    ints = [tuple(int(round(c / grid)) for c in row) for row in arr]
    radius = config.frame_scale * diam
    frame = [tuple(int(round(u * radius / grid)) for u in dirs)
             for dirs in _FRAME_DIRS[d]]
    limit = 0.4 * radius / d
    if np.abs(arr).max() > limit:
        raise TrifiltError(
            "frame scale too small to enclose the data; raise frame_scale")
    return PointCloud(ints + frame, quantum, n_frame=d + 1)


def _prepare_exact(points, config):
    data = [tuple(Fraction(c) for c in p) for p in points]
    n = len(data)
    d = len(data[0])
    centroid = tuple(sum(p[t] for p in data) / n for t in range(d))
    arr = np.asarray([[float(c) for c in p] for p in data], dtype=float)
    diam = _bbox_diameter(arr)
    if diam == 0:
        diam = 1.0
    radius = config.frame_scale * diam
    snap = Fraction(2) ** (math.ceil(math.log2(radius)) - 20)
    frame = [tuple(round(Fraction(u) * Fraction(radius) / snap) * snap + centroid[t]
                   for t, u in enumerate(dirs))
             for dirs in _FRAME_DIRS[d]]
    span = float(np.abs(arr - np.asarray([[float(c) for c in centroid]])).max())
    if span > 0.4 * radius / d:
        raise TrifiltError(
            "frame scale too small to enclose the data; raise frame_scale")
    return PointCloud.from_coords(data, frame)


# ---------------------------------------------------------------------------
# scc2020

def render_scc2020(filt, comments=()) -> bytes:
    """Chain-complex text: format tag, comments, parameter count, block
    sizes by descending dimension, then one line per generator with its
    three filtration values, a ';', and 0-based facet indices into the
    next-lower block."""
    lines = ["scc2020"]
    lines.extend(f"# {c}" for c in comments)
    lines.append("3")
    sizes = filt.block_sizes()
    lines.append(" ".join(map(str, sizes)))
    pos = {}
    for rec in filt.records:
        k = len(rec.verts) - 1
        block = pos.setdefault(k, {})
        block[rec.verts] = len(block)
    for rec in filt.records:
        k = len(rec.verts) - 1
        vals = " ".join(repr(v) for v in rec.values)
        if k == 0:
            lines.append(f"{vals} ;")
        else:
            lower = pos[k - 1]
            facets = sorted(lower[rec.verts[:j] + rec.verts[j + 1:]]
                            for j in range(k + 1))
            lines.append(f"{vals} ; " + " ".join(map(str, facets)))
    return ("\n".join(lines) + "\n").encode()


def write_scc2020(filt, stream, comments=()) -> bytes:
    """Write the filtration to a binary or text stream; returns the bytes."""
    data = render_scc2020(filt, comments)
    if hasattr(stream, "buffer"):
        stream = stream.buffer
    try:
        stream.write(data)
    except TypeError:
        stream.write(data.decode())
    return data


def read_scc2020(source):
    """Round-trip reader: returns (num_params, block_sizes, blocks) where
    each block is a list of (values tuple, facet index tuple)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    if isinstance(text, bytes):
        text = text.decode()
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != "scc2020":
        raise ParseError("missing scc2020 header", 1, 1)
    num_params = int(lines[1])
    sizes = [int(t) for t in lines[2].split()]
    blocks = []
    at = 3
    for size in sizes:
        block = []
        for _ in range(size):
            head, _, tail = lines[at].partition(";")
            values = tuple(float(t) for t in head.split())
            if len(values) != num_params:
                raise ParseError(f"expected {num_params} values", at + 1, 1)
            block.append((values, tuple(int(t) for t in tail.split())))
            at += 1
        blocks.append(block)
    if at != len(lines):
        raise ParseError("trailing generator lines", at + 1, 1)
    return num_params, sizes, blocks
