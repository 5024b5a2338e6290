"""Mutable Delaunay triangulation with conflict reporting.

Bowyer-Watson insertion (the removed cells are reported as conflicts),
vertex deletion by retriangulating the neighborhood and keeping the cells
in conflict with the removed vertex, and straight-walk point location.
Cells are sorted vertex-index tuples; every predicate decision is exact
(float filter, integer fallback).

A Triangulation is confined to one execution context at a time; distinct
instances are independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from math import gcd as _gcd

from . import _kernels as k
from .errors import GeneralPositionError, TrifiltError
from .geometry import _INSIDE_SIGN


def _det_rows(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    return (a0 * (b1 * c2 - b2 * c1)
            - a1 * (b0 * c2 - b2 * c0)
            + a2 * (b0 * c1 - b1 * c0))


@dataclass(frozen=True)
class BWConflict:
    cell: tuple
    vertex: int


def _make_orient(cloud):
    fc, ic, d = cloud.fcoords, cloud.icoords, cloud.d
    float_ok = cloud.float_safe
    if d == 1:
        def orient(i, j):
            a, b = ic[i][0], ic[j][0]
            return (b > a) - (b < a)
    elif d == 2:
        def orient(i, j, l):
            if float_ok:
                a, b, c = fc[i], fc[j], fc[l]
                s = k.orient2d_f(a[0], a[1], b[0], b[1], c[0], c[1])
                if s:
                    return int(s)
            a, b, c = ic[i], ic[j], ic[l]
            v = k.orient2d_i(a[0], a[1], b[0], b[1], c[0], c[1])
            return (v > 0) - (v < 0)
    else:
        def orient(i, j, l, m):
            if float_ok:
                a, b, c, e = fc[i], fc[j], fc[l], fc[m]
                s = k.orient3d_f(a[0], a[1], a[2], b[0], b[1], b[2],
                                 c[0], c[1], c[2], e[0], e[1], e[2])
                if s:
                    return int(s)
            a, b, c, e = ic[i], ic[j], ic[l], ic[m]
            v = k.orient3d_i(a[0], a[1], a[2], b[0], b[1], b[2],
                             c[0], c[1], c[2], e[0], e[1], e[2])
            return (v > 0) - (v < 0)
    return orient


def _make_insphere(cloud):
    """Raw lifted-determinant sign for (cell points..., query point)."""
    fc, ic, d = cloud.fcoords, cloud.icoords, cloud.d
    float_ok = cloud.float_safe
    if d == 1:
        def insph(cell, q):
            if float_ok:
                s = k.insphere1d_f(fc[cell[0]][0], fc[cell[1]][0], fc[q][0])
                if s:
                    return int(s)
            v = k.insphere1d_i(ic[cell[0]][0], ic[cell[1]][0], ic[q][0])
            return (v > 0) - (v < 0)
    elif d == 2:
        def insph(cell, q):
            if float_ok:
                a, b, c, e = fc[cell[0]], fc[cell[1]], fc[cell[2]], fc[q]
                s = k.insphere2d_f(a[0], a[1], b[0], b[1], c[0], c[1], e[0], e[1])
                if s:
                    return int(s)
            a, b, c, e = ic[cell[0]], ic[cell[1]], ic[cell[2]], ic[q]
            v = k.insphere2d_i(a[0], a[1], b[0], b[1], c[0], c[1], e[0], e[1])
            return (v > 0) - (v < 0)
    else:
        def insph(cell, q):
            if float_ok:
                a, b, c, e, f = (fc[cell[0]], fc[cell[1]], fc[cell[2]],
                                 fc[cell[3]], fc[q])
                s = k.insphere3d_f(a[0], a[1], a[2], b[0], b[1], b[2],
                                   c[0], c[1], c[2], e[0], e[1], e[2],
                                   f[0], f[1], f[2])
                if s:
                    return int(s)
            a, b, c, e, f = (ic[cell[0]], ic[cell[1]], ic[cell[2]],
                             ic[cell[3]], ic[q])
            v = k.insphere3d_i(a[0], a[1], a[2], b[0], b[1], b[2],
                               c[0], c[1], c[2], e[0], e[1], e[2],
                               f[0], f[1], f[2])
            return (v > 0) - (v < 0)
    return insph


class Triangulation:
    """Delaunay triangulation of the frame plus a set of data vertices."""

    __slots__ = ("cloud", "d", "cells", "adj", "vcells", "last_cell",
                 "_orient", "_insph", "_inside_sign", "_hints")

    def __init__(self, cloud, hints=None):
        if not cloud.has_frame:
            raise TrifiltError("triangulation requires a framed point cloud")
        self.cloud = cloud
        self.d = cloud.d
        self._orient = _make_orient(cloud)
        self._insph = _make_insphere(cloud)
        self._inside_sign = _INSIDE_SIGN[cloud.d]
        self.cells = {}
        self.adj = {}
        self.vcells = {}
        # walk-start hints may be shared across rebuilds; stale entries are
        # resolved through their vertices
        self._hints = {} if hints is None else hints
        frame = tuple(cloud.frame_indices)
        parity = self._orient(*frame)
        if parity == 0:
            raise GeneralPositionError("degenerate frame")
        self._add_cell(frame, parity)
        self.last_cell = frame

    # -- bookkeeping ---------------------------------------------------

    def _add_cell(self, cell, parity):
        self.cells[cell] = parity
        for j in range(self.d + 1):
            facet = cell[:j] + cell[j + 1:]
            self.adj.setdefault(facet, []).append(cell)
        for v in cell:
            self.vcells.setdefault(v, set()).add(cell)

    def _drop_cell(self, cell):
        del self.cells[cell]
        for j in range(self.d + 1):
            facet = cell[:j] + cell[j + 1:]
            lst = self.adj[facet]
            lst.remove(cell)
            if not lst:
                del self.adj[facet]
        for v in cell:
            s = self.vcells[v]
            s.discard(cell)
            if not s:
                del self.vcells[v]

    def _neighbor(self, facet, cell):
        lst = self.adj.get(facet, ())
        for c in lst:
            if c != cell:
                return c
        return None

    @property
    def vertices(self):
        return self.vcells.keys()

    def data_vertices(self):
        n = self.cloud.n_data
        return sorted(v for v in self.vcells if v < n)

    def side_of_cell(self, cell, q) -> int:
        """+1 if q is strictly inside the circumsphere of cell, 0 on, -1 outside."""
        raw = self._insph(cell, q)
        return raw * self.cells[cell] * self._inside_sign

    # -- point location ------------------------------------------------

    def _facet_signs(self, cell, parity, orient_q):
        """Orientation of the query against each facet of the cell, with the
        facet oriented so the opposite cell vertex gets sign +1."""
        d = self.d
        out = []
        for j in range(d + 1):
            facet = cell[:j] + cell[j + 1:]
            # moving cell[j] to the end of the sorted tuple costs d-j swaps
            ref = parity if (d - j) % 2 == 0 else -parity
            out.append(orient_q(facet) * ref)
        return out

    def _orient_query(self, q):
        """Orientation test `facet -> sign(facet..., q)` for a query that is
        either a vertex index or a rational coordinate tuple."""
        if isinstance(q, int):
            orient = self._orient
            return lambda facet: orient(*facet, q)
        coords = q.coords if hasattr(q, "coords") else tuple(q)
        cl = self.cloud
        fr = [Fraction(c) / cl.quantum for c in coords]
        den = 1
        for f in fr:
            den = den * f.denominator // _gcd(den, f.denominator)
        qnum = tuple(int(f * den) for f in fr)
        ic = cl.icoords

        def orient_q(facet):
            p0 = ic[facet[0]]
            rows = [tuple(ic[i][t] - p0[t] for t in range(self.d))
                    for i in facet[1:]]
            rows.append(tuple(qnum[t] - den * p0[t] for t in range(self.d)))
            v = _det_rows(rows)
            return (v > 0) - (v < 0)

        return orient_q

    def _walk_start(self, q):
        if isinstance(q, int):
            hint = self._hints.get(q)
            if hint is not None:
                if hint in self.cells:
                    return hint
                for u in hint:
                    cs = self.vcells.get(u)
                    if cs:
                        return next(iter(cs))
        if self.last_cell in self.cells:
            return self.last_cell
        return next(iter(self.cells))

    def locate(self, q):
        """A cell whose closed simplex contains q (a vertex index, Point, or
        coordinate tuple).  Ties on shared facets go to the lexicographically
        smallest cell."""
        orient_q = self._orient_query(q)
        cell = self._walk_start(q)
        cells = self.cells
        d1 = self.d + 1
        steps = 0
        limit = 4 * len(cells) + 16
        while True:
            parity = cells[cell]
            zeros = None
            for j in range(d1):
                facet = cell[:j] + cell[j + 1:]
                ref = parity if (self.d - j) % 2 == 0 else -parity
                s = orient_q(facet) * ref
                if s < 0:
                    nxt = self._neighbor(facet, cell)
                    if nxt is None:
                        raise GeneralPositionError(
                            "query point outside the frame hull")
                    cell = nxt
                    break
                if s == 0:
                    zeros = facet if zeros is None else zeros
            else:
                # containing cell; resolve on-facet ties deterministically
                best = cell
                if zeros is not None:
                    for j in range(d1):
                        facet = cell[:j] + cell[j + 1:]
                        ref = parity if (self.d - j) % 2 == 0 else -parity
                        if orient_q(facet) * ref == 0:
                            nb = self._neighbor(facet, cell)
                            if nb is not None and nb < best \
                                    and self._contains(nb, orient_q):
                                best = nb
                return best
            steps += 1
            if steps > limit:
                return self._locate_scan(orient_q)

    def _contains(self, cell, orient_q):
        return all(s >= 0
                   for s in self._facet_signs(cell, self.cells[cell], orient_q))

    def _locate_scan(self, orient_q):
        for cell in sorted(self.cells):
            if self._contains(cell, orient_q):
                return cell
        raise GeneralPositionError("query point outside the frame hull")

    # -- insertion -------------------------------------------------------

    def insert(self, v: int):
        """Insert data vertex v; returns the BW-conflicts (removed cells)."""
        if v in self.vcells:
            raise GeneralPositionError(f"duplicate vertex {v}")
        start = self.locate(v)
        cavity = self._conflict_cells(start, v)
        conflicts = [BWConflict(c, v) for c in cavity]
        self._retriangulate_cavity(cavity, v)
        self._hints[v] = self.last_cell
        return conflicts

    def _conflict_cells(self, start, v):
        """Facet-connected set of cells whose circumsphere strictly contains v."""
        insph = self._insph
        cells = self.cells
        adj = self.adj
        flip = self._inside_sign
        d1 = self.d + 1
        s = insph(start, v) * cells[start] * flip
        if s == 0:
            raise GeneralPositionError(
                f"vertex {v} lies on a circumsphere; perturb the input")
        if s < 0:
            raise GeneralPositionError(
                f"vertex {v} not in conflict with its containing cell")
        cavity = [start]
        seen = {start}
        i = 0
        while i < len(cavity):
            cell = cavity[i]
            i += 1
            for j in range(d1):
                facet = cell[:j] + cell[j + 1:]
                nb = None
                for c in adj.get(facet, ()):
                    if c != cell:
                        nb = c
                        break
                if nb is None or nb in seen:
                    continue
                seen.add(nb)
                s = insph(nb, v) * cells[nb] * flip
                if s == 0:
                    raise GeneralPositionError(
                        f"vertex {v} lies on a circumsphere; perturb the input")
                if s > 0:
                    cavity.append(nb)
        return cavity

    def _retriangulate_cavity(self, cavity, v):
        in_cavity = set(cavity)
        boundary = []
        for cell in cavity:
            for j in range(self.d + 1):
                facet = cell[:j] + cell[j + 1:]
                nb = self._neighbor(facet, cell)
                if nb is None or nb not in in_cavity:
                    boundary.append(facet)
        for cell in cavity:
            self._drop_cell(cell)
        for facet in boundary:
            cell = tuple(sorted(facet + (v,)))
            parity = self._orient(*cell)
            if parity == 0:
                raise GeneralPositionError(
                    f"vertex {v} is coplanar with a cavity facet; perturb the input")
            self._add_cell(cell, parity)
            self.last_cell = cell

    # -- deletion --------------------------------------------------------

    def remove(self, v: int):
        """Remove data vertex v and repair the triangulation.

        The star of v is deleted and the hole is filled with the cells of
        the Delaunay triangulation of the neighborhood of v that are in
        conflict with v; locality of Delaunay triangulations makes this
        equal to the global repair."""
        if v not in self.vcells:
            raise GeneralPositionError(f"vertex {v} not present")
        if self.cloud.is_frame(v):
            raise GeneralPositionError("cannot remove a frame vertex")
        star = sorted(self.vcells[v])
        nbhd = sorted({u for c in star for u in c if u != v})
        hole_facets = {}
        for cell in star:
            for j in range(self.d + 1):
                facet = cell[:j] + cell[j + 1:]
                if v in facet:
                    continue
                hole_facets[facet] = self._neighbor(facet, cell)

        mini = Triangulation(self.cloud)
        n_data = self.cloud.n_data
        for u in nbhd:
            if u < n_data:
                mini.insert(u)
        fill = [c for c in sorted(mini.cells) if mini.side_of_cell(c, v) > 0]

        for cell in star:
            self._drop_cell(cell)
        for cell in fill:
            self._add_cell(cell, mini.cells[cell])
        self._check_hole(hole_facets, fill)
        self.last_cell = fill[0] if fill else next(iter(self.cells))

    def _check_hole(self, hole_facets, fill):
        counts = {}
        for cell in fill:
            for j in range(self.d + 1):
                facet = cell[:j] + cell[j + 1:]
                counts[facet] = counts.get(facet, 0) + 1
        for facet, outside in hole_facets.items():
            expected = 1
            if counts.get(facet, 0) != expected:
                raise GeneralPositionError("cavity refill does not match the hole")
            if outside is None and len(self.adj[facet]) != 1:
                raise GeneralPositionError("cavity refill broke the hull boundary")
        for facet, c in counts.items():
            if facet not in hole_facets and c != 2:
                raise GeneralPositionError("cavity refill left an unmatched facet")

    # -- queries -----------------------------------------------------------

    def neighborhood(self, v: int):
        """Vertices joined to v by an edge, together with v itself."""
        if v not in self.vcells:
            raise GeneralPositionError(f"vertex {v} not present")
        return {u for c in self.vcells[v] for u in c}

    def cell_set(self):
        return set(self.cells)

    def check_invariants(self):
        """Empty-circumsphere and facet-pairing invariants; raises on failure."""
        frame = set(self.cloud.frame_indices)
        for facet, lst in self.adj.items():
            want = 1 if set(facet) <= frame else 2
            if len(lst) != want:
                raise TrifiltError(f"facet {facet} has {len(lst)} incident cells")
        verts = list(self.vcells)
        for cell in self.cells:
            cv = set(cell)
            for w in verts:
                if w in cv:
                    continue
                if self.side_of_cell(cell, w) >= 0:
                    raise TrifiltError(f"cell {cell} circumsphere not empty of {w}")


def init_delta(cloud) -> Triangulation:
    """Triangulation consisting of the single frame cell."""
    return Triangulation(cloud)
