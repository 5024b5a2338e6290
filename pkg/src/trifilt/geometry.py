"""Exact low-level geometry.

Orientation and in-sphere predicates, circumspheres, smallest enclosing
balls, and the boundary-constrained miniball.  All sign decisions are exact:
inputs are rescaled to a common integer lattice, a floating-point filter
handles the easy cases, and integer arithmetic decides the rest.  Spheres
are represented internally in homogeneous integer form (center*D, D,
sq_radius*D*D) so that side-of-sphere tests are pure integer comparisons.

All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _kernels as k
from .errors import DegenerateInputError

_FLOAT_SAFE = 1 << 52  # lattice coordinates up to here are exact doubles


class Side(enum.Enum):
    INSIDE = -1
    ON = 0
    OUTSIDE = 1


@dataclass(frozen=True)
class Point:
    """A point of the cloud: d rational coordinates plus its index."""

    coords: tuple
    index: int = -1


@dataclass(frozen=True)
class Sphere:
    """Sphere with rational center and squared radius (radius 0 = singleton)."""

    center: tuple
    sq_radius: Fraction

    def side_of(self, point) -> Side:
        q = _coords(point)
        if len(q) != len(self.center):
            raise DegenerateInputError("dimension mismatch")
        d2 = sum((Fraction(qi) - ci) ** 2 for qi, ci in zip(q, self.center))
        if d2 < self.sq_radius:
            return Side.INSIDE
        if d2 == self.sq_radius:
            return Side.ON
        return Side.OUTSIDE

    def encloses(self, point) -> bool:
        return self.side_of(point) != Side.OUTSIDE


def _coords(p):
    return p.coords if isinstance(p, Point) else tuple(p)


def _to_lattice(point_sets):
    """Rescale rational coordinate tuples to a common integer lattice.

    Returns (scaled point lists ..., denominator) so that real coordinates
    are int/denominator.  Accepts several lists at once so related points
    share one lattice.
    """
    fracs = [[tuple(Fraction(c) for c in pt) for pt in pts] for pts in point_sets]
    den = 1
    for pts in fracs:
        for pt in pts:
            for c in pt:
                den = den * c.denominator // gcd(den, c.denominator)
    scaled = [[tuple(int(c * den) for c in pt) for pt in pts] for pts in fracs]
    return (*scaled, den)


# ---------------------------------------------------------------------------
# sign predicates

def _orient_sign(ipts):
    """Exact orientation sign of d+1 lattice points (rows p_i - p_0)."""
    d = len(ipts[0])
    small = all(abs(c) <= _FLOAT_SAFE for pt in ipts for c in pt)
    if d == 1:
        return (ipts[1][0] > ipts[0][0]) - (ipts[1][0] < ipts[0][0])
    if d == 2:
        if small:
            s = k.orient2d_f(*map(float, ipts[0] + ipts[1] + ipts[2]))
            if s:
                return int(s)
        v = k.orient2d_i(*ipts[0], *ipts[1], *ipts[2])
    else:
        if small:
            s = k.orient3d_f(*map(float, ipts[0] + ipts[1] + ipts[2] + ipts[3]))
            if s:
                return int(s)
        v = k.orient3d_i(*ipts[0], *ipts[1], *ipts[2], *ipts[3])
    return (v > 0) - (v < 0)


def _insphere_sign(icell, iq):
    """Exact sign of the lifted in-sphere determinant (raw, unoriented)."""
    d = len(iq)
    small = all(abs(c) <= _FLOAT_SAFE for pt in icell for c in pt) and \
        all(abs(c) <= _FLOAT_SAFE for c in iq)
    if d == 1:
        if small:
            s = k.insphere1d_f(float(icell[0][0]), float(icell[1][0]), float(iq[0]))
            if s:
                return int(s)
        v = k.insphere1d_i(icell[0][0], icell[1][0], iq[0])
    elif d == 2:
        if small:
            s = k.insphere2d_f(*map(float, icell[0] + icell[1] + icell[2] + iq))
            if s:
                return int(s)
        v = k.insphere2d_i(*icell[0], *icell[1], *icell[2], *iq)
    else:
        if small:
            s = k.insphere3d_f(*map(float,
                                    icell[0] + icell[1] + icell[2] + icell[3] + iq))
            if s:
                return int(s)
        v = k.insphere3d_i(*icell[0], *icell[1], *icell[2], *icell[3], *iq)
    return (v > 0) - (v < 0)


# sign that the raw lifted determinant carries for an inside point, per d
_INSIDE_SIGN = {1: -1, 2: 1, 3: -1}


def orientation(pts) -> int:
    """Sign of the determinant of the affine frame of d+1 points.

    +1 / -1 for the two orientation classes, 0 iff affinely dependent.
    """
    cpts = [_coords(p) for p in pts]
    d = len(cpts[0])
    if not 1 <= d <= 3 or len(cpts) != d + 1 or any(len(c) != d for c in cpts):
        raise DegenerateInputError("orientation needs exactly d+1 points of dimension d")
    ipts, _ = _to_lattice([cpts])
    return _orient_sign(ipts)


def in_sphere(cell, q) -> Side:
    """Side of q relative to the circumsphere of an affinely independent cell.

    The cell's orientation is normalized internally; the decision is exact.
    """
    ccell = [_coords(p) for p in cell]
    cq = _coords(q)
    d = len(cq)
    if len(ccell) != d + 1:
        raise DegenerateInputError("cell must have d+1 points")
    icell, iq, _ = _to_lattice([ccell, [cq]])
    parity = _orient_sign(icell)
    if parity == 0:
        raise DegenerateInputError("degenerate cell")
    s = _insphere_sign(icell, iq[0]) * parity * _INSIDE_SIGN[d]
    if s > 0:
        return Side.INSIDE
    if s == 0:
        return Side.ON
    return Side.OUTSIDE


# ---------------------------------------------------------------------------
# homogeneous integer spheres
#
# An isphere is a tuple (v, D, r2n): center = v/D, squared radius = r2n/D^2.

def _solve_small(a, b):
    """Exact solve of a k x k integer system (k <= 3) via Cramer, with a
    Fraction elimination fallback for singular-but-consistent systems.

    Returns (nums, den, direct) with t_i = nums[i]/den, direct telling
    whether the full-rank Cramer path was taken; None if inconsistent.
    """
    n = len(a)
    if n == 1:
        if a[0][0] != 0:
            return [b[0]], a[0][0], True
    elif n == 2:
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        if det != 0:
            return [b[0] * a[1][1] - a[0][1] * b[1],
                    a[0][0] * b[1] - b[0] * a[1][0]], det, True
    elif n == 3:
        c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1]
        c01 = a[1][2] * a[2][0] - a[1][0] * a[2][2]
        c02 = a[1][0] * a[2][1] - a[1][1] * a[2][0]
        det = a[0][0] * c00 + a[0][1] * c01 + a[0][2] * c02
        if det != 0:
            n0 = (b[0] * c00
                  + a[0][1] * (a[1][2] * b[2] - b[1] * a[2][2])
                  + a[0][2] * (b[1] * a[2][1] - a[1][1] * b[2]))
            n1 = (a[0][0] * (b[1] * a[2][2] - a[1][2] * b[2])
                  + b[0] * c01
                  + a[0][2] * (a[1][0] * b[2] - b[1] * a[2][0]))
            n2 = (a[0][0] * (a[1][1] * b[2] - b[1] * a[2][1])
                  + a[0][1] * (b[1] * a[2][0] - a[1][0] * b[2])
                  + b[0] * c02)
            return [n0, n1, n2], det, True
    else:
        raise DegenerateInputError("system too large")
    sol = _solve_fraction(a, b)
    if sol is None:
        return None
    return sol[0], sol[1], False


def _solve_fraction(a, b):
    """Gaussian elimination over Fractions; free variables pinned to 0.
    Returns (nums, den) or None if inconsistent."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    piv_col = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_col.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if m[i][n] != 0:
            return None
    t = [Fraction(0)] * n
    for i, c in enumerate(piv_col):
        t[c] = m[i][n]
    den = 1
    for x in t:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in t], den


def _isphere_normalize(v, big_d, r2n):
    if big_d < 0:
        v = tuple(-x for x in v)
        big_d = -big_d
    g = big_d
    for x in v:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        v = tuple(x // g for x in v)
        big_d //= g
        r2n //= g * g
    return (v, big_d, r2n)


def _icircumsphere(ipts):
    """Smallest sphere through all of ipts with center in their affine hull.

    Returns an isphere, or None when the points admit no common sphere
    (affinely dependent and not cospherical).
    """
    b0 = ipts[0]
    vs = [tuple(x - y for x, y in zip(p, b0)) for p in ipts[1:]]
    if not vs:
        return (b0, 1, 0)
    a = [[2 * sum(x * y for x, y in zip(vi, vj)) for vj in vs] for vi in vs]
    rhs = [sum(x * x for x in vi) for vi in vs]
    sol = _solve_small(a, rhs)
    if sol is None:
        return None
    nums, den, direct = sol
    u = [sum(n * vi[j] for n, vi in zip(nums, vs)) for j in range(len(b0))]
    r2n = sum(x * x for x in u)
    if not direct:
        # rank-deficient path: the free variables were pinned, so the
        # equidistance of every input must be confirmed
        for vi in vs:
            dv = [x - den * y for x, y in zip(u, vi)]
            if sum(x * x for x in dv) != r2n:
                return None
    v = tuple(b0[j] * den + u[j] for j in range(len(b0)))
    return _isphere_normalize(v, den, r2n)


def _isphere_cmp(sph, q):
    """Sign of dist(q, center)^2 - r^2: negative inside, 0 on, positive outside."""
    v, big_d, r2n = sph
    s = sum((big_d * qi - vi) ** 2 for qi, vi in zip(q, v))
    return (s > r2n) - (s < r2n)


def _welzl(pts, n, boundary, d):
    """Smallest sphere through `boundary` enclosing pts[:n] (move-to-front)."""
    if n == 0 or len(boundary) == d + 1:
        if not boundary:
            return None
        sph = _icircumsphere(boundary)
        if sph is None:
            raise DegenerateInputError("degenerate boundary support")
        return sph
    p = pts[n - 1]
    sph = _welzl(pts, n - 1, boundary, d)
    if sph is not None and _isphere_cmp(sph, p) <= 0:
        return sph
    sph = _welzl(pts, n - 1, boundary + [p], d)
    pts[:n] = [p] + pts[:n - 1]
    return sph


def _affine_rank(ipts):
    if not ipts:
        return -1
    vs = [[Fraction(x - y) for x, y in zip(p, ipts[0])] for p in ipts[1:]]
    rank = 0
    cols = len(ipts[0])
    for c in range(cols):
        p = next((i for i in range(rank, len(vs)) if vs[i][c] != 0), None)
        if p is None:
            continue
        vs[rank], vs[p] = vs[p], vs[rank]
        for i in range(len(vs)):
            if i != rank and vs[i][c] != 0:
                f = vs[i][c] / vs[rank][c]
                vs[i] = [x - f * y for x, y in zip(vs[i], vs[rank])]
        rank += 1
    return rank


def affinely_independent(pts) -> bool:
    cpts = [_coords(p) for p in pts]
    ipts, _ = _to_lattice([cpts])
    return _affine_rank(ipts) == len(ipts) - 1


def _isphere_to_sphere(sph, den):
    v, big_d, r2n = sph
    scale = big_d * den
    return Sphere(tuple(Fraction(x, scale) for x in v),
                  Fraction(r2n, big_d * big_d * den * den))


def circumsphere(pts) -> Sphere:
    """Smallest sphere through k <= d+1 affinely independent points; the
    center lies in their affine hull."""
    cpts = [_coords(p) for p in pts]
    if not cpts:
        raise DegenerateInputError("empty input")
    ipts, den = _to_lattice([cpts])
    if _affine_rank(ipts) != len(ipts) - 1:
        raise DegenerateInputError("affinely dependent input")
    sph = _icircumsphere(ipts)
    return _isphere_to_sphere(sph, den)


def miniball(pts) -> Sphere:
    """Unique smallest enclosing ball of a non-empty set of points."""
    cpts = [_coords(p) for p in pts]
    if not cpts:
        raise DegenerateInputError("empty input")
    ipts, den = _to_lattice([cpts])
    uniq = list(dict.fromkeys(ipts))
    d = len(uniq[0])
    sph = _welzl(uniq, len(uniq), [], d)
    return _isphere_to_sphere(sph, den)


def miniball_on_boundary(boundary, enclosed):
    """Smallest sphere with every boundary point on it and every enclosed
    point inside or on it.

    Reduces to circumsphere for empty `enclosed` and to miniball for empty
    `boundary`.  Returns None when no such sphere exists.
    """
    cb = [_coords(p) for p in boundary]
    ce = [_coords(p) for p in enclosed]
    if not cb and not ce:
        raise DegenerateInputError("empty input")
    ib, ie, den = _to_lattice([cb, ce])
    d = len((ib + ie)[0])
    if ib and _affine_rank(ib) != len(ib) - 1:
        raise DegenerateInputError("affinely dependent boundary")
    ie = list(dict.fromkeys(ie))
    sph = _welzl(ie, len(ie), list(ib), d)
    if sph is None:
        sph = _icircumsphere(ib)
        if sph is None:
            raise DegenerateInputError("degenerate boundary support")
    for q in ib:
        if _isphere_cmp(sph, q) != 0:
            return None
    for q in ie:
        if _isphere_cmp(sph, q) > 0:
            return None
    return _isphere_to_sphere(sph, den)
