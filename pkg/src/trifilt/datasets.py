"""Synthetic point clouds and the four scalar functions used in benchmarks."""

from __future__ import annotations

import numpy as np

from .errors import TrifiltError

DATASETS = ("circle", "square", "sphere", "torus", "cube")
FUNCTIONS = ("codensity", "coeccentricity", "height", "random")

_TORUS_MAJOR = 1.0
_TORUS_MINOR = 0.4


def generate_dataset(name, n, seed):
    """n seeded samples of the named space, with 5% of the points replaced
    by uniform noise from the tight bounding box of the clean sample."""
    if n < 1:
        raise TrifiltError("need at least one point")
    rng = np.random.default_rng(seed)
    if name == "circle":
        theta = rng.uniform(0.0, 2.0 * np.pi, n)
        pts = np.c_[np.cos(theta), np.sin(theta)]
    elif name == "square":
        pts = rng.uniform(0.0, 1.0, (n, 2))
    elif name == "sphere":
        g = rng.normal(size=(n, 3))
        pts = g / np.linalg.norm(g, axis=1, keepdims=True)
    elif name == "torus":
        pts = _torus_sample(rng, n)
    elif name == "cube":
        pts = rng.uniform(0.0, 1.0, (n, 3))
    else:
        raise TrifiltError(f"unknown dataset {name!r}")
    k = int(round(0.05 * n))
    if k:
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        pts[n - k:] = rng.uniform(lo, hi, (k, pts.shape[1]))
    return [tuple(map(float, p)) for p in pts]


def _torus_sample(rng, n):
    # area-uniform: accept the tube angle against the 1 + (r/R) cos weight
    out = np.empty((n, 3))
    ratio = _TORUS_MINOR / _TORUS_MAJOR
    i = 0
    while i < n:
        theta = rng.uniform(0.0, 2.0 * np.pi)
        if rng.uniform(0.0, 1.0 + ratio) > 1.0 + ratio * np.cos(theta):
            continue
        phi = rng.uniform(0.0, 2.0 * np.pi)
        w = _TORUS_MAJOR + _TORUS_MINOR * np.cos(theta)
        out[i] = (w * np.cos(phi), w * np.sin(phi), _TORUS_MINOR * np.sin(theta))
        i += 1
    return out


def compute_function(points, kind, seed=0):
    """The scalar function values used by the benchmark suite."""
    n = len(points)
    if kind == "height":
        return [float(p[-1]) for p in points]
    if kind == "random":
        rng = np.random.default_rng(seed)
        return [float(v) for v in rng.uniform(0.0, 1.0, n)]
    if n < 2:
        raise TrifiltError(f"{kind} needs at least two points")
    pts = np.asarray(points, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    if kind == "coeccentricity":
        return [float(v) for v in -dist.sum(axis=1) / n]
    if kind == "codensity":
        iu = np.triu_indices(n, k=1)
        nz = np.sort(dist[iu])
        nz = nz[nz > 0.0]
        if nz.size == 0:
            raise TrifiltError("all points coincide")
        # nearest-rank 0.1th percentile of the non-zero distances
        idx = max(1, int(np.ceil(0.001 * nz.size)))
        sigma = float(nz[idx - 1])
        ker = np.exp(-(dist / sigma) ** 2)
        np.fill_diagonal(ker, 0.0)
        return [float(v) for v in -ker.sum(axis=1)]
    raise TrifiltError(f"unknown function {kind!r}")


def interlevel(delta):
    """Pair each value with its negation: gamma = (-delta, delta)."""
    return [(-float(v), float(v)) for v in delta]
