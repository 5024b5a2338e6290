"""Tie-broken total orders and grid navigation for the two function values.

Raw values may collide; ranks are made injective by breaking ties on the
point index, ascending, identically in both coordinates.  The grid is then
just the square of rank values 1..N, and all sublevel tests are integer
rank comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError


@dataclass(frozen=True)
class BiFunction:
    raw: tuple          # per point index: (value1, value2)
    rank1: tuple        # per point index: dense rank, 1-based
    rank2: tuple
    order1: tuple       # order1[r-1] = index of the point with rank1 == r
    order2: tuple
    n_frame: int = 0

    @property
    def n(self):
        return len(self.raw)

    def sub_le(self, i, r1, r2):
        """Is point i in the sublevel set of grid index (r1, r2)?"""
        return self.rank1[i] <= r1 and self.rank2[i] <= r2

    def incomparable(self, i, j):
        return (self.rank1[i] < self.rank1[j]) == (self.rank2[i] > self.rank2[j])

    def swapped(self) -> "BiFunction":
        return BiFunction(tuple((b, a) for a, b in self.raw),
                          self.rank2, self.rank1, self.order2, self.order1,
                          self.n_frame)

    # grid steps; None outside the grid
    def right(self, p):
        return (p[0] + 1, p[1]) if p[0] < self.n else None

    def up(self, p):
        return (p[0], p[1] + 1) if p[1] < self.n else None

    def left(self, p):
        return (p[0] - 1, p[1]) if p[0] > 1 else None

    def down(self, p):
        return (p[0], p[1] - 1) if p[1] > 1 else None

    def down_left(self, p):
        q = self.down(p)
        return self.left(q) if q else None

    def value_at(self, p):
        """Raw (value1, value2) of a grid index."""
        return (self.raw[self.order1[p[0] - 1]][0],
                self.raw[self.order2[p[1] - 1]][1])


def build_orders(raw_values, n_frame=0) -> BiFunction:
    """Dense tie-broken ranks and both total orders for raw value pairs.

    With a frame, the first n_frame ranks of both orders must be the frame
    points in the same relative order; the caller arranges this by giving
    frame points values strictly below the data in both coordinates.
    """
    raw = tuple((a, b) for a, b in raw_values)
    n = len(raw)
    for i, (a, b) in enumerate(raw):
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DegenerateInputError(f"non-finite function value at point {i}")
    order1 = tuple(sorted(range(n), key=lambda i: (raw[i][0], i)))
    order2 = tuple(sorted(range(n), key=lambda i: (raw[i][1], i)))
    rank1 = [0] * n
    rank2 = [0] * n
    for r, i in enumerate(order1, start=1):
        rank1[i] = r
    for r, i in enumerate(order2, start=1):
        rank2[i] = r
    if n_frame:
        frame = range(n - n_frame, n)
        head1 = order1[:n_frame]
        head2 = order2[:n_frame]
        if sorted(head1) != list(frame) or head1 != head2:
            raise DegenerateInputError(
                "frame values must precede all data values in both orders")
    return BiFunction(raw, tuple(rank1), tuple(rank2), order1, order2, n_frame)
