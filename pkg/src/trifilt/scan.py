"""Grid-line sweeps that collect conflict pairs.

A conflict pair is a sublevel Delaunay d-cell together with the next point
along one grid direction that lands strictly inside its circumsphere.  The
vertical pass walks the first order and discovers pairs against the second;
the horizontal pass is the same machinery with the two orders swapped and
the recorded grid indices mirrored back.  Three strategies are offered:

* naive: rebuild the triangulation from scratch for every line;
* nonlocal: carry the triangulation across lines, deleting the points that
  are above the new line start (or rebuilding when that is cheaper, which
  changes nothing observable since re-discovered pairs deduplicate);
* local: after inserting the line's point, peel only its higher neighbors,
  then replay them; pairs are filtered to those touching the line's point.

All three produce the same ledger.
"""

from __future__ import annotations

from dataclasses import dataclass

from .delaunay import Triangulation
from .errors import TrifiltError

STRATEGIES = ("naive", "nonlocal", "local")


@dataclass(frozen=True)
class ConflictPair:
    cell: tuple
    vertex: int
    grid_index: tuple   # (rank1, rank2) where the pair was first seen


class ConflictLedger:
    """Per-cell conflict lists, kept sorted by first-order rank.

    Insertion is idempotent on (cell, vertex); a genuinely new vertex must
    arrive in first-order position (the sweeps discover them sorted), which
    is asserted rather than repaired.
    """

    __slots__ = ("bifn", "tlists", "_seen", "points")

    def __init__(self, bifn, record_points=True):
        self.bifn = bifn
        self.tlists = {}
        self._seen = set()
        self.points = {} if record_points else None

    def add(self, cell, vertex, grid_index):
        key = (cell, vertex)
        if key in self._seen:
            return
        self._seen.add(key)
        lst = self.tlists.get(cell)
        if lst is None:
            self.tlists[cell] = [vertex]
        else:
            if self.bifn.rank1[vertex] <= self.bifn.rank1[lst[-1]]:
                raise TrifiltError(
                    f"conflict vertex {vertex} for cell {cell} arrived out of order")
            lst.append(vertex)
        if self.points is not None:
            self.points[key] = grid_index

    def __len__(self):
        return len(self._seen)

    def __contains__(self, key):
        return key in self._seen

    def cells(self):
        return sorted(self.tlists)

    def pairs(self):
        out = []
        for cell in self.cells():
            for v in self.tlists[cell]:
                p = self.points.get((cell, v)) if self.points is not None else None
                out.append(ConflictPair(cell, v, p))
        return out

    def canonical(self):
        """Strategy-independent content: cell -> ordered conflict tuple."""
        return {cell: tuple(vs) for cell, vs in self.tlists.items()}

    def validate(self):
        """Order and pairwise-incomparability invariants of every list."""
        bf = self.bifn
        for cell, vs in self.tlists.items():
            for a, b in zip(vs, vs[1:]):
                if not (bf.rank1[a] < bf.rank1[b] and bf.rank2[a] > bf.rank2[b]):
                    raise TrifiltError(
                        f"conflict list of {cell} is not an antichain in order")


def derive_triples(ledger):
    """Conflict triples: consecutive entries of each cell's conflict list."""
    out = []
    for cell in ledger.cells():
        vs = ledger.tlists[cell]
        out.extend((cell, a, b) for a, b in zip(vs, vs[1:]))
    return out


def scan(cloud, bifn, strategy="local", record_points=True) -> ConflictLedger:
    """Run the vertical and horizontal passes and collect all conflict pairs."""
    if strategy not in STRATEGIES:
        raise TrifiltError(f"unknown strategy {strategy!r}")
    ledger = ConflictLedger(bifn, record_points)
    _sweep(cloud, bifn, strategy, ledger.add)
    swapped = bifn.swapped()

    def add_mirrored(cell, vertex, p):
        ledger.add(cell, vertex, (p[1], p[0]))

    _sweep(cloud, swapped, strategy, add_mirrored)
    return ledger


def _sweep(cloud, bf, strategy, add):
    n_data = cloud.n_data
    by_line = [i for i in bf.order1 if i < n_data]
    rank2 = bf.rank2
    if strategy == "naive":
        _sweep_naive(cloud, bf, by_line, rank2, add)
    elif strategy == "nonlocal":
        _sweep_nonlocal(cloud, bf, by_line, rank2, add)
    else:
        _sweep_local(cloud, bf, by_line, rank2, add)


def _sweep_naive(cloud, bf, by_line, rank2, add):
    hints = {}
    for li in range(len(by_line)):
        a = bf.rank1[by_line[li]]
        tri = Triangulation(cloud, hints=hints)
        for z in sorted(by_line[:li + 1], key=lambda i: rank2[i]):
            p = (a, rank2[z] - 1)
            for c in tri.insert(z):
                add(c.cell, z, p)


def _sweep_nonlocal(cloud, bf, by_line, rank2, add):
    tri = Triangulation(cloud)
    present = []
    for x in by_line:
        r2x = rank2[x]
        keep = [w for w in present if rank2[w] < r2x]
        above = [w for w in present if rank2[w] > r2x]
        above.sort(key=lambda i: rank2[i])
        if len(keep) < len(above):
            tri = Triangulation(cloud, hints=tri._hints)
            for w in sorted(keep, key=lambda i: rank2[i]):
                tri.insert(w)
        else:
            for w in reversed(above):
                tri.remove(w)
        a = bf.rank1[x]
        p = (a, r2x - 1)
        for c in tri.insert(x):
            add(c.cell, x, p)
        for z in above:
            p = (a, rank2[z] - 1)
            for c in tri.insert(z):
                add(c.cell, z, p)
        present.append(x)


def _sweep_local(cloud, bf, by_line, rank2, add):
    n_data = cloud.n_data
    tri = Triangulation(cloud)
    for x in by_line:
        a, r2x = bf.rank1[x], rank2[x]
        first = tri.insert(x)
        peeled = []
        while True:
            above = [w for w in tri.neighborhood(x)
                     if w != x and w < n_data and rank2[w] > r2x]
            if not above:
                break
            w = min(above)
            tri.remove(w)
            peeled.append(w)
        if not peeled:
            # nothing was peeled, so removing and reinserting x would
            # reproduce exactly the conflicts of the first insertion
            p = (a, r2x - 1)
            for c in first:
                add(c.cell, x, p)
            continue
        tri.remove(x)
        p = (a, r2x - 1)
        for c in tri.insert(x):
            add(c.cell, x, p)
        for z in sorted(peeled, key=lambda i: rank2[i]):
            p = (a, rank2[z] - 1)
            for c in tri.insert(z):
                if x in c.cell:
                    add(c.cell, z, p)
