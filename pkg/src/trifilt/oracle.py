"""Brute-force reference implementations of the definitions.

Everything here is computed straight from first principles, independently
of the incremental machinery: Delaunay membership by circumsphere
enumeration, complex membership by exact feasibility of the witness-sphere
problem, minimum witness radii by active-set enumeration of the underlying
quadratic program, Cech complexes by subset-enumerated smallest enclosing
balls, and Betti numbers by elimination over the two-element field.  All
decisions are exact on rational inputs; costs grow combinatorially, so
callers keep inputs at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DegenerateInputError, GeneralPositionError
from .geometry import _icircumsphere, _isphere_cmp, _solve_small


class SimplicialComplexDense:
    """Explicit simplex set (sorted vertex tuples), closed under faces."""

    def __init__(self, simplices=()):
        self.simplices = {tuple(sorted(s)) for s in simplices}

    def add_with_faces(self, s):
        s = tuple(sorted(s))
        stack = [s]
        while stack:
            t = stack.pop()
            if t in self.simplices or not t:
                continue
            self.simplices.add(t)
            if len(t) > 1:
                stack.extend(t[:j] + t[j + 1:] for j in range(len(t)))

    def __contains__(self, s):
        return tuple(sorted(s)) in self.simplices

    def __eq__(self, other):
        return self.simplices == other.simplices

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(sorted(self.simplices))

    def by_dim(self, k):
        return sorted(s for s in self.simplices if len(s) == k + 1)

    @property
    def dim(self):
        return max((len(s) for s in self.simplices), default=0) - 1

    def is_closed_under_faces(self):
        for s in self.simplices:
            if len(s) > 1:
                for j in range(len(s)):
                    if s[:j] + s[j + 1:] not in self.simplices:
                        return False
        return True


# ---------------------------------------------------------------------------
# the witness-sphere quadratic program
#
# Centers c are constrained by statements of the form
#   |c - w|^2 (=, <=, >=) |c - z|^2,
# each linear in c; the objective |c - z|^2 is strictly convex.  The exact
# minimizer is found by enumerating tight subsets of the inequality
# constraints up to the dimension of the equality-constrained subspace,
# solving each equality-constrained minimum by linear algebra, filtering by
# feasibility, and taking the least feasible objective.

def _row(ic, z, w):
    """Constraint |c-w|^2 cmp |c-z|^2 as (a, beta) with a.c cmp' beta."""
    zz = ic[z]
    ww = ic[w]
    a = tuple(2 * (wi - zi) for wi, zi in zip(ww, zz))
    beta = sum(x * x for x in ww) - sum(x * x for x in zz)
    return a, beta


def _solve_tight(rows, rhs, z_pt, d):
    """Minimize |c - z|^2 subject to rows . c = rhs; homogeneous result
    (v, den, sq_num) with c = v/den and objective sq_num/den^2, or None."""
    k = len(rows)
    if k == 0:
        return z_pt, 1, 0
    m = [[sum(x * y for x, y in zip(ri, rj)) for rj in rows] for ri in rows]
    f = [rhs[i] - sum(x * y for x, y in zip(rows[i], z_pt)) for i in range(k)]
    sol = _solve_small(m, f)
    if sol is None:
        return None
    nums, den, _ = sol
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    off = tuple(sum(nums[i] * rows[i][t] for i in range(k)) for t in range(d))
    v = tuple(z_pt[t] * den + off[t] for t in range(d))
    return v, den, sum(x * x for x in off)


def _sphere_qp(ic, d, z, eq, ins, outs, minimize):
    """Exact witness QP over lattice points.

    z: reference index; eq: indices equidistant to z; ins: indices that must
    be inside or on; outs: indices that must be outside or on.  Returns the
    minimum squared radius (lattice units, Fraction) when minimize is True,
    else just feasibility; None / False when infeasible.
    """
    z_pt = ic[z]
    eq_rows = [_row(ic, z, w) for w in eq]
    ineq = [(_row(ic, z, w), +1) for w in ins] + \
           [(_row(ic, z, w), -1) for w in outs]
    m = d - len(eq_rows)
    if m < 0:
        # more through-points than a sphere in R^d can carry
        return None if minimize else False
    best = None
    for size in range(0, m + 1):
        for subset in combinations(range(len(ineq)), size):
            rows = [r for r, _ in eq_rows] + [ineq[i][0][0] for i in subset]
            rhs = [b for _, b in eq_rows] + [ineq[i][0][1] for i in subset]
            cand = _solve_tight(rows, rhs, z_pt, d)
            if cand is None:
                continue
            v, den, sq_num = cand
            ok = True
            for (a, beta), kind in ineq:
                val = sum(x * y for x, y in zip(a, v)) - beta * den
                # kind +1: a.c >= beta (inside-or-on); -1: a.c <= beta
                if kind * val < 0:
                    ok = False
                    break
            if not ok:
                continue
            if not minimize:
                return True
            obj = Fraction(sq_num, den * den)
            if best is None or obj < best:
                best = obj
    if not minimize:
        return False
    return best


def _witness_problem(sigma, bifn, data_indices):
    """Decompose the witness condition of a simplex into QP pieces:
    (z, eq, ins, outs), or None for singletons (always feasible, radius 0)."""
    sigma = tuple(sorted(sigma))
    if len(sigma) == 1:
        return None
    x = max(sigma, key=lambda i: bifn.rank1[i])
    y = max(sigma, key=lambda i: bifn.rank2[i])
    r1, r2 = bifn.rank1[x], bifn.rank2[y]
    member = set(sigma)
    outs = [w for w in data_indices
            if w not in member and bifn.rank1[w] <= r1 and bifn.rank2[w] <= r2]
    if x == y:
        tau = [v for v in sigma if v != x]
        return tau[0], tau[1:], [x], outs
    tau = [v for v in sigma if v != x and v != y]
    if tau:
        return tau[0], tau[1:], [x, y], outs
    return x, [y], [], outs


def brute_incr(cloud, bifn) -> SimplicialComplexDense:
    """The complex of all witnessed simplices, by exhaustive feasibility."""
    ic = cloud.icoords
    d = cloud.d
    data = list(cloud.data_indices())
    out = SimplicialComplexDense()
    for k in range(1, min(d + 3, len(data)) + 1):
        for sigma in combinations(data, k):
            prob = _witness_problem(sigma, bifn, data)
            if prob is None:
                out.simplices.add(sigma)
                continue
            z, eq, ins, outs = prob
            if _sphere_qp(ic, d, z, eq, ins, outs, minimize=False):
                out.simplices.add(sigma)
    return out


def brute_omega(sigma, cloud, bifn) -> Fraction:
    """Minimum witness radius of sigma, squared, in real units; exact."""
    prob = _witness_problem(sigma, bifn, list(cloud.data_indices()))
    if prob is None:
        return Fraction(0)
    z, eq, ins, outs = prob
    best = _sphere_qp(cloud.icoords, cloud.d, z, eq, ins, outs, minimize=True)
    if best is None:
        raise DegenerateInputError(f"simplex {sigma} admits no witness")
    return best * cloud.quantum ** 2


def min_empty_circumradius_sq(sigma, cloud, indices):
    """Smallest radius (squared, real units) of a circumsphere of sigma empty
    of the given vertex set; None if sigma is not Delaunay there."""
    sigma = tuple(sorted(sigma))
    member = set(sigma)
    outs = [w for w in indices if w not in member]
    best = _sphere_qp(cloud.icoords, cloud.d, sigma[0], list(sigma[1:]),
                      [], outs, minimize=True)
    return None if best is None else best * cloud.quantum ** 2


# ---------------------------------------------------------------------------
# Delaunay triangulations and conflict pairs from the definition

def brute_delaunay(cloud, indices=None) -> SimplicialComplexDense:
    """All simplices with an empty circumsphere, from the definition."""
    ic = cloud.icoords
    d = cloud.d
    idx = sorted(indices) if indices is not None else sorted(range(len(ic)))
    out = SimplicialComplexDense()
    for v in idx:
        out.simplices.add((v,))
    for cell in combinations(idx, d + 1):
        sph = _icircumsphere([ic[v] for v in cell])
        if sph is None:
            raise GeneralPositionError(f"affinely dependent points {cell}")
        empty = True
        member = set(cell)
        for w in idx:
            if w in member:
                continue
            cmp = _isphere_cmp(sph, ic[w])
            if cmp == 0:
                raise GeneralPositionError(
                    f"point {w} on the circumsphere of {cell}")
            if cmp < 0:
                empty = False
                break
        if empty:
            out.add_with_faces(cell)
    for k in range(2, d + 1):
        for sigma in combinations(idx, k):
            if sigma in out.simplices:
                continue
            member = set(sigma)
            outs = [w for w in idx if w not in member]
            if _sphere_qp(ic, d, sigma[0], list(sigma[1:]), [], outs,
                          minimize=False):
                out.simplices.add(sigma)
    return out


def _delaunay_dcells(cloud, idx):
    """Just the top cells of the Delaunay triangulation of the given indices."""
    ic = cloud.icoords
    d = cloud.d
    cells = []
    for cell in combinations(sorted(idx), d + 1):
        sph = _icircumsphere([ic[v] for v in cell])
        if sph is None:
            raise GeneralPositionError(f"affinely dependent points {cell}")
        member = set(cell)
        empty = True
        for w in idx:
            if w in member:
                continue
            cmp = _isphere_cmp(sph, ic[w])
            if cmp == 0:
                raise GeneralPositionError(
                    f"point {w} on the circumsphere of {cell}")
            if cmp < 0:
                empty = False
                break
        if empty:
            cells.append((cell, sph))
    return cells


def brute_conflicts(cloud, bifn):
    """Conflict pairs and triples straight from the grid definition.

    Walks every grid index p, takes the d-cells of the Delaunay
    triangulation of the sublevel set, and tests the at-most-two admissible
    next points against each circumsphere.  Returns (pairs, per_cell, triples):
    a set of (cell, vertex), a dict cell -> conflict vertices sorted by the
    first order, and a set of (cell, vertex, vertex) keyed in first-order
    positions.
    """
    n = bifn.n
    d = cloud.d
    cache = {}

    def dcells(r1, r2):
        members = frozenset(i for i in range(n) if bifn.sub_le(i, r1, r2))
        got = cache.get(members)
        if got is None:
            got = _delaunay_dcells(cloud, members) if len(members) >= d + 1 else []
            cache[members] = got
        return got

    pairs = set()
    triples = set()
    for r1 in range(d + 1, n + 1):
        for r2 in range(d + 1, n + 1):
            cand = []
            if r1 < n:
                x = bifn.order1[r1]      # rank1 == r1 + 1
                if bifn.rank2[x] <= r2:
                    cand.append(x)
            if r2 < n:
                x = bifn.order2[r2]
                if bifn.rank1[x] <= r1:
                    cand.append(x)
            if not cand:
                continue
            here = {}
            for cell, sph in dcells(r1, r2):
                for x in cand:
                    cmp = _isphere_cmp(sph, cloud.icoords[x])
                    if cmp == 0:
                        raise GeneralPositionError(
                            f"point {x} on the circumsphere of {cell}")
                    if cmp < 0:
                        pairs.add((cell, x))
                        here.setdefault(cell, []).append(x)
            for cell, xs in here.items():
                if len(xs) == 2:
                    a, b = sorted(xs, key=lambda i: bifn.rank1[i])
                    triples.add((cell, a, b))
    per_cell = {}
    for cell, x in pairs:
        per_cell.setdefault(cell, []).append(x)
    for cell in per_cell:
        per_cell[cell].sort(key=lambda i: bifn.rank1[i])
    return pairs, per_cell, triples


# ---------------------------------------------------------------------------
# smallest enclosing balls by subset enumeration

def miniball_oracle(ipts, boundary=()):
    """Smallest sphere through `boundary` enclosing `ipts`, by enumerating
    circumspheres of affinely independent subsets.  Inputs are lattice point
    tuples; returns a homogeneous sphere (v, den, sq_num) or None."""
    pts = list(dict.fromkeys(tuple(boundary) + tuple(ipts)))
    if not pts:
        raise DegenerateInputError("empty input")
    d = len(pts[0])
    best = None
    best_r = None
    for k in range(1, min(d + 1, len(pts)) + 1):
        for sub in combinations(pts, k):
            sph = _icircumsphere(list(sub))
            if sph is None:
                continue
            if any(_isphere_cmp(sph, q) != 0 for q in boundary):
                continue
            if any(_isphere_cmp(sph, q) > 0 for q in pts):
                continue
            v, den, sq = sph
            r = Fraction(sq, den * den)
            if best_r is None or r < best_r:
                best, best_r = sph, r
    return best


def miniball_sq_oracle(cloud, sigma) -> Fraction:
    """Squared smallest-enclosing-ball radius of a vertex tuple, real units."""
    sph = miniball_oracle([cloud.icoords[v] for v in sigma])
    v, den, sq = sph
    return Fraction(sq, den * den) * cloud.quantum ** 2


def cech_complex(cloud, indices, sq_radius, max_dim) -> SimplicialComplexDense:
    """All simplices on the given vertices whose smallest enclosing ball has
    squared radius at most sq_radius (real units), up to max_dim."""
    out = SimplicialComplexDense()
    idx = sorted(indices)
    for k in range(1, max_dim + 2):
        for sigma in combinations(idx, k):
            if miniball_sq_oracle(cloud, sigma) <= sq_radius:
                out.simplices.add(sigma)
    return out


# ---------------------------------------------------------------------------
# homology over the two-element field

def _rank_gf2(cols):
    pivots = {}
    rank = 0
    for col in cols:
        while col:
            h = col.bit_length()
            p = pivots.get(h)
            if p is None:
                pivots[h] = col
                rank += 1
                break
            col ^= p
    return rank


def betti(complex_, k_max):
    """Betti numbers beta_0..beta_k_max of a simplicial complex over GF(2).

    The complex must contain its (k_max+1)-skeleton faithfully."""
    layers = [complex_.by_dim(k) for k in range(k_max + 2)]
    index = [{s: i for i, s in enumerate(layer)} for layer in layers]
    ranks = [0] * (k_max + 2)
    for k in range(1, k_max + 2):
        lower = index[k - 1]
        cols = []
        for s in layers[k]:
            col = 0
            for j in range(len(s)):
                col |= 1 << lower[s[:j] + s[j + 1:]]
            cols.append(col)
        ranks[k] = _rank_gf2(cols)
    out = []
    for k in range(k_max + 1):
        out.append(len(layers[k]) - ranks[k] - ranks[k + 1])
    return out


# ---------------------------------------------------------------------------
# independent numeric route for the witness radius

def omega_sq_numeric(sigma, cloud, bifn, rounds=4000):
    """Coarse numeric witness radius via Dykstra alternating projections.

    Projects the reference vertex onto the feasible polyhedron of the
    witness problem; the squared distance converges to the exact squared
    radius.  Used only as a cross-check at about 1e-6 relative accuracy.
    """
    prob = _witness_problem(sigma, bifn, list(cloud.data_indices()))
    if prob is None:
        return 0.0
    z, eq, ins, outs = prob
    ic = cloud.icoords
    d = cloud.d
    cons = []
    for w in eq:
        a, b = _row(ic, z, w)
        cons.append((np.array(a, dtype=float), float(b), 0))
    for w in ins:
        a, b = _row(ic, z, w)
        cons.append((np.array(a, dtype=float), float(b), +1))  # a.c >= b
    for w in outs:
        a, b = _row(ic, z, w)
        cons.append((np.array(a, dtype=float), float(b), -1))  # a.c <= b
    zp = np.array(ic[z], dtype=float)
    c = zp.copy()
    corr = [np.zeros(d) for _ in cons]
    for _ in range(rounds):
        for i, (a, b, kind) in enumerate(cons):
            y = c + corr[i]
            nn = a @ a
            if nn == 0.0:
                continue
            t = (a @ y - b) / nn
            if kind == 0:
                proj = y - t * a
            elif kind > 0:
                proj = y - t * a if t < 0 else y
            else:
                proj = y - t * a if t > 0 else y
            corr[i] = y - proj
            c = proj
    return float(((c - zp) @ (c - zp))) * float(cloud.quantum) ** 2
