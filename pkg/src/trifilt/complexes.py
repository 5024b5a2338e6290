"""The incremental complex: a face-closed simplex store with cofacet links.

Assembled as the downward closure of the conflict simplices (cell + one or
two conflict vertices), restricted to data points.  Frame vertices never
enter the store: the data-only faces of a mixed conflict simplex are
exactly the faces of its data-only part, so each conflict simplex is
reduced before closure.  Very small inputs, where the conflict
characterization does not apply, are delegated to the brute-force oracle.
"""

from __future__ import annotations

from .oracle import brute_incr


class IncrComplex:
    """Simplices of dimension <= d+2 over data vertices, with per-simplex
    birth slots filled by the filtration builder."""

    __slots__ = ("simplices", "index", "cofacets", "by_dim", "dim",
                 "g1max", "g2max", "sq_m", "sq_omega", "gabriel")

    def __init__(self):
        self.simplices = []
        self.index = {}
        self.cofacets = []
        self.by_dim = []
        self.dim = -1
        self.g1max = None
        self.g2max = None
        self.sq_m = None
        self.sq_omega = None
        self.gabriel = None

    def _add(self, s):
        sid = self.index.get(s)
        if sid is None:
            sid = len(self.simplices)
            self.index[s] = sid
            self.simplices.append(s)
            self.cofacets.append([])
        return sid, sid == len(self.simplices) - 1

    def build(self, tops):
        """Downward closure of the given simplices, linking cofacets."""
        stack = []
        for t in tops:
            sid, new = self._add(tuple(t))
            if new:
                stack.append(sid)
        while stack:
            sid = stack.pop()
            s = self.simplices[sid]
            if len(s) == 1:
                continue
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                fid, new = self._add(f)
                self.cofacets[fid].append(sid)
                if new:
                    stack.append(fid)
        self.dim = max((len(s) for s in self.simplices), default=0) - 1
        self.by_dim = [[] for _ in range(self.dim + 1)]
        order = sorted(range(len(self.simplices)),
                       key=lambda i: self.simplices[i])
        for sid in order:
            self.by_dim[len(self.simplices[sid]) - 1].append(sid)
        return self

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return tuple(sorted(s)) in self.index

    def __iter__(self):
        for dim_ids in self.by_dim:
            for sid in dim_ids:
                yield self.simplices[sid]

    def simplex_set(self):
        return set(self.simplices)

    def cofacet_simplices(self, s):
        sid = self.index[tuple(sorted(s))]
        return [self.simplices[c] for c in self.cofacets[sid]]


def assemble_incr(ledger, triples, cloud, bifn) -> IncrComplex:
    """Assemble the incremental complex from the scan results.

    Conflict simplices are the (d+2)-simplices cell+{x,y} from the triples
    together with cell+{x} for cells with a single conflict; the complex is
    their downward closure with frame vertices stripped, which contains the
    Delaunay triangulation of every sublevel set.
    """
    n_data = cloud.n_data
    out = IncrComplex()
    if n_data <= cloud.d + 1:
        dense = brute_incr(cloud, bifn)
        out.build(dense.simplices)
        return out
    tops = set()
    for cell, x, y in triples:
        data = tuple(v for v in sorted(cell + (x, y)) if v < n_data)
        if data:
            tops.add(data)
    for cell, vs in ledger.tlists.items():
        if len(vs) == 1:
            data = tuple(v for v in sorted(cell + (vs[0],)) if v < n_data)
            if data:
                tops.add(data)
    out.build(sorted(tops))
    return out
