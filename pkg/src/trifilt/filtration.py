"""Per-simplex birth data and the two one-critical trifiltrations.

Each simplex gets three birth coordinates: the componentwise maximum of its
function values, and a radius.  For the Delaunay-Cech filtration the radius
is the smallest enclosing ball; for the Delaunay filtration it is the
minimum witness radius, computed by the cofacet recursion: a simplex whose
support sphere (smallest sphere through the simplex minus its two order
maxima, enclosing those maxima) is empty of the sublevel set is final, and
every other simplex inherits the smallest radius among its cofacets.

Radii are computed and compared as exact squared rationals; square roots
are taken only at emission, rounded to double.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import TrifiltError
from .geometry import Sphere, _isphere_cmp, _welzl


@dataclass(frozen=True)
class BirthData:
    gamma_join: tuple
    sq_m: Fraction
    sq_omega: Fraction
    gabriel: bool

    @property
    def m(self):
        return math.sqrt(self.sq_m)

    @property
    def omega(self):
        return math.sqrt(self.sq_omega)


@dataclass(frozen=True)
class FiltrationRecord:
    verts: tuple
    values: tuple      # (gamma1, gamma2, radius) as floats


@dataclass(frozen=True)
class FiltrationOutput:
    kind: str           # "del" or "delcech"
    records: tuple      # descending dimension, lexicographic within

    def block_sizes(self):
        sizes = {}
        for r in self.records:
            k = len(r.verts) - 1
            sizes[k] = sizes.get(k, 0) + 1
        return [sizes.get(k, 0) for k in range(max(sizes), -1, -1)]


def gamma_join(sigma, bifn):
    """Componentwise maximum of the raw function values over the simplex."""
    sigma = tuple(sigma)
    if not sigma:
        raise TrifiltError("empty simplex")
    return (max(bifn.raw[v][0] for v in sigma),
            max(bifn.raw[v][1] for v in sigma))


def _maxima(sigma, bifn):
    x = max(sigma, key=lambda v: bifn.rank1[v])
    y = max(sigma, key=lambda v: bifn.rank2[v])
    return x, y


def _support_sphere(sigma, bifn, cloud):
    """Smallest sphere through sigma minus its two order maxima with the
    maxima inside or on; homogeneous lattice form."""
    ic = cloud.icoords
    x, y = _maxima(sigma, bifn)
    boundary = [ic[v] for v in sigma if v != x and v != y]
    enclosed = [ic[x]] if x == y else [ic[x], ic[y]]
    return _welzl(enclosed, len(enclosed), boundary, cloud.d), x, y


def _sphere_real(sph, quantum):
    v, den, r2n = sph
    return Sphere(tuple(Fraction(c, den) * quantum for c in v),
                  Fraction(r2n, den * den) * quantum ** 2)


def compute_m_sq(sigma, cloud) -> Fraction:
    """Exact squared smallest-enclosing-ball radius of a vertex tuple."""
    pts = [cloud.icoords[v] for v in sigma]
    sph = _welzl(pts, len(pts), [], cloud.d)
    v, den, r2n = sph
    return Fraction(r2n, den * den) * cloud.quantum ** 2


def compute_m(sigma, cloud) -> float:
    return math.sqrt(compute_m_sq(sigma, cloud))


def is_incr_gabriel(sigma, incr, bifn, cloud):
    """Whether the support sphere of sigma is empty of the sublevel set of
    its value join, decided through the cofacets of sigma in the complex.

    Returns (flag, support sphere)."""
    sigma = tuple(sorted(sigma))
    if sigma not in incr:
        raise TrifiltError(f"simplex {sigma} not in the complex")
    sph, x, y = _support_sphere(sigma, bifn, cloud)
    flag = _gabriel_flag(sigma, sph, incr.cofacet_simplices(sigma), bifn, cloud, x, y)
    return flag, _sphere_real(sph, cloud.quantum)


def _gabriel_flag(sigma, sph, cofacet_simplices, bifn, cloud, x, y):
    r1, r2 = bifn.rank1[x], bifn.rank2[y]
    ic = cloud.icoords
    rank1, rank2 = bifn.rank1, bifn.rank2
    member = set(sigma)
    for mu in cofacet_simplices:
        for w in mu:
            if w not in member:
                break
        if rank1[w] <= r1 and rank2[w] <= r2 and _isphere_cmp(sph, ic[w]) < 0:
            return False
    return True


def compute_births(incr, bifn, cloud, want_m=True, want_omega=True):
    """Fill the per-simplex birth slots of the complex, top dimension first."""
    n = len(incr)
    ic = cloud.icoords
    rank1, rank2 = bifn.rank1, bifn.rank2
    q2 = cloud.quantum ** 2
    d = cloud.d
    incr.g1max = [0] * n
    incr.g2max = [0] * n
    if want_m:
        incr.sq_m = [None] * n
    if want_omega:
        incr.sq_omega = [None] * n
        incr.gabriel = bytearray(n)
    for dim_ids in reversed(incr.by_dim):
        for sid in dim_ids:
            s = incr.simplices[sid]
            x = max(s, key=lambda v: rank1[v])
            y = max(s, key=lambda v: rank2[v])
            incr.g1max[sid] = x
            incr.g2max[sid] = y
            if want_m:
                pts = [ic[v] for v in s]
                _, den, r2n = _welzl(pts, len(pts), [], d)
                incr.sq_m[sid] = Fraction(r2n, den * den) * q2
            if not want_omega:
                continue
            boundary = [ic[v] for v in s if v != x and v != y]
            enclosed = [ic[x]] if x == y else [ic[x], ic[y]]
            sph = _welzl(enclosed, len(enclosed), boundary, d)
            r1x, r2y = rank1[x], rank2[y]
            member = set(s)
            gab = True
            for mid in incr.cofacets[sid]:
                for w in incr.simplices[mid]:
                    if w not in member:
                        break
                if rank1[w] <= r1x and rank2[w] <= r2y \
                        and _isphere_cmp(sph, ic[w]) < 0:
                    gab = False
                    break
            if gab:
                _, den, r2n = sph
                incr.sq_omega[sid] = Fraction(r2n, den * den) * q2
            else:
                cof = incr.cofacets[sid]
                if not cof:
                    raise TrifiltError(
                        f"maximal simplex {s} fails its own support sphere")
                incr.sq_omega[sid] = min(incr.sq_omega[mid] for mid in cof)
            incr.gabriel[sid] = gab
    return incr


def compute_all_omega(incr, bifn, cloud):
    """Assign the minimum witness radius to every simplex of the complex."""
    return compute_births(incr, bifn, cloud, want_m=False, want_omega=True)


def birth_data(incr, bifn, sid) -> BirthData:
    s = incr.simplices[sid]
    return BirthData(gamma_join(s, bifn),
                     incr.sq_m[sid] if incr.sq_m is not None else None,
                     incr.sq_omega[sid] if incr.sq_omega is not None else None,
                     bool(incr.gabriel[sid]) if incr.gabriel is not None else None)


def emit_filtration(incr, kind, bifn) -> FiltrationOutput:
    """Dimension-blocked, deterministically ordered filtration records.

    Descending dimension, lexicographic vertex order within a dimension;
    the radius column is the witness radius for kind="del" and the
    enclosing-ball radius for kind="delcech"."""
    if kind not in ("del", "delcech"):
        raise TrifiltError(f"unknown filtration kind {kind!r}")
    radii = incr.sq_omega if kind == "del" else incr.sq_m
    if radii is None or incr.g1max is None:
        raise TrifiltError("birth data not computed")
    records = []
    for dim_ids in reversed(incr.by_dim):
        for sid in dim_ids:
            s = incr.simplices[sid]
            g1 = bifn.raw[incr.g1max[sid]][0]
            g2 = bifn.raw[incr.g2max[sid]][1]
            records.append(FiltrationRecord(
                s, (float(g1), float(g2), math.sqrt(radii[sid]))))
    return FiltrationOutput(kind, tuple(records))
