"""Point cloud storage.

Coordinates live on a common integer lattice: real coordinates are
``icoords[i] * quantum`` with ``quantum`` a power of two.  The engine and
the birth-radius solvers work directly on the lattice integers (predicates
are scale invariant); squared radii are converted back through quantum**2
at the API boundary.  Float images of the lattice coordinates are exact as
long as the integers stay below 2**53, which the preparation step
guarantees.

The d+1 artificial frame points, when present, are appended after the data
points, so data points keep their input indices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DegenerateInputError
from .geometry import Point


class PointCloud:
    __slots__ = ("d", "n_data", "n_frame", "icoords", "fcoords", "quantum",
                 "float_safe")

    def __init__(self, icoords, quantum, n_frame=0):
        if not icoords:
            raise DegenerateInputError("empty point cloud")
        self.d = len(icoords[0])
        if not 1 <= self.d <= 3:
            raise DegenerateInputError(f"dimension {self.d} not in 1..3")
        self.icoords = [tuple(pt) for pt in icoords]
        self.quantum = Fraction(quantum)
        self.n_frame = n_frame
        self.n_data = len(icoords) - n_frame
        self.fcoords = [tuple(float(c) for c in pt) for pt in self.icoords]
        self.float_safe = all(abs(c) <= (1 << 52)
                              for pt in self.icoords for c in pt)

    @classmethod
    def from_coords(cls, data_pts, frame_pts=()):
        """Build a cloud from rational coordinate tuples on a fresh lattice."""
        pts = [tuple(Fraction(c) for c in p) for p in data_pts]
        pts += [tuple(Fraction(c) for c in p) for p in frame_pts]
        den = 1
        for p in pts:
            for c in p:
                den = den * c.denominator // gcd(den, c.denominator)
        ipts = [tuple(int(c * den) for c in p) for p in pts]
        g = 0
        for p in ipts:
            for c in p:
                g = gcd(g, c)
        if g > 1:
            ipts = [tuple(c // g for c in p) for p in ipts]
            quantum = Fraction(g, den)
        else:
            quantum = Fraction(1, den)
        return cls(ipts, quantum, n_frame=len(tuple(frame_pts)))

    def __len__(self):
        return len(self.icoords)

    @property
    def has_frame(self):
        return self.n_frame > 0

    def is_frame(self, i):
        return i >= self.n_data

    @property
    def frame_indices(self):
        return range(self.n_data, self.n_data + self.n_frame)

    def exact_coords(self, i):
        return tuple(c * self.quantum for c in self.icoords[i])

    def point(self, i) -> Point:
        return Point(self.exact_coords(i), i)

    def data_indices(self):
        return range(self.n_data)
