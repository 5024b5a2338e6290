"""Cross-checks of the incremental machinery against the brute-force
definitions, at desk scale.  Used by the verify command and the test suite."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import assemble_incr
from .errors import TrifiltError
from .filtration import compute_births
from .geometry import _isphere_cmp, _welzl
from .io import RunConfig, prepare
from .oracle import (SimplicialComplexDense, betti, brute_conflicts,
                     brute_delaunay, brute_incr, brute_omega,
                     min_empty_circumradius_sq, miniball_sq_oracle)
from .scan import derive_triples, scan


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    def record(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def mismatches(self):
        return sum(1 for _, ok, _ in self.checks if not ok)

    def lines(self):
        out = []
        for name, ok, detail in self.checks:
            status = "ok" if ok else "MISMATCH"
            out.append(f"{name}: {status}" + (f" ({detail})" if detail else ""))
        out.append(f"{self.mismatches} mismatches")
        return out


def filtered_subcomplex(incr, bifn, p, sq_r, radii) -> SimplicialComplexDense:
    """Simplices whose value join is within grid index p and whose squared
    birth radius is at most sq_r."""
    r1, r2 = p
    out = SimplicialComplexDense()
    for sid, s in enumerate(incr.simplices):
        if radii[sid] <= sq_r and bifn.rank1[incr.g1max[sid]] <= r1 \
                and bifn.rank2[incr.g2max[sid]] <= r2:
            out.simplices.add(s)
    return out


def sublevel_indices(bifn, n_data, p):
    r1, r2 = p
    return [i for i in range(n_data) if bifn.sub_le(i, r1, r2)]


def equivalence_samples(cloud, bifn, incr, sample_count, seed):
    """Deterministic (grid index, squared radius) test samples.

    Radii are drawn from the enclosing-ball radii of the complex (hitting
    the closed-ball boundary cases exactly) plus small offsets."""
    rng = random.Random(seed)
    n = bifn.n
    d = cloud.d
    crit = sorted(set(incr.sq_m)) if incr.sq_m else [Fraction(0)]
    samples = []
    for _ in range(sample_count):
        p = (rng.randint(d + 1, n), rng.randint(d + 1, n))
        k = rng.randrange(max(1, int(len(crit) * 0.8)))
        base = crit[min(k, len(crit) - 1)]
        sq_r = base if rng.random() < 0.5 else base + Fraction(1, 7)
        samples.append((p, sq_r))
    return samples


def check_equivalence(cloud, bifn, incr, samples, k_max=None):
    """Betti numbers of both filtrations against the Cech complex of the
    sublevel set, for every sample; returns a list of mismatch strings."""
    d = cloud.d
    if k_max is None:
        k_max = d
    n_data = cloud.n_data
    cech_cache = {}
    bad = []
    for p, sq_r in samples:
        idx = tuple(sublevel_indices(bifn, n_data, p))
        key = (idx, sq_r)
        if key not in cech_cache:
            cech = SimplicialComplexDense()
            _fill_cech(cech, cloud, idx, sq_r, k_max + 1)
            cech_cache[key] = betti(cech, k_max) if idx else [0] * (k_max + 1)
        want = cech_cache[key]
        for kind, radii in (("delcech", incr.sq_m), ("del", incr.sq_omega)):
            if radii is None:
                continue
            sub = filtered_subcomplex(incr, bifn, p, sq_r, radii)
            got = betti(sub, k_max) if len(sub) else [0] * (k_max + 1)
            if got != want:
                bad.append(f"{kind} at p={p} r2={sq_r}: {got} != {want}")
    return bad


def _fill_cech(cech, cloud, idx, sq_r, max_dim):
    from itertools import combinations
    ic = cloud.icoords
    q2 = cloud.quantum ** 2
    for k in range(1, max_dim + 2):
        for sigma in combinations(idx, k):
            pts = [ic[v] for v in sigma]
            _, den, r2n = _welzl(pts, len(pts), [], cloud.d)
            if Fraction(r2n, den * den) * q2 <= sq_r:
                cech.simplices.add(sigma)


def check_containment(cloud, bifn, incr, radii_count=5, seed=0):
    """Sublevel Delaunay complexes, alpha-filtered, must embed in the
    witness filtration at every grid index; returns mismatch strings."""
    rng = random.Random(seed)
    n = bifn.n
    n_data = cloud.n_data
    bad = []
    seen = set()
    omega = {incr.simplices[i]: incr.sq_omega[i] for i in range(len(incr))}
    for r1 in range(cloud.d + 1, n + 1):
        for r2 in range(cloud.d + 1, n + 1):
            idx = tuple(sublevel_indices(bifn, n_data, (r1, r2)))
            if not idx or idx in seen:
                continue
            seen.add(idx)
            delt = brute_delaunay(cloud, idx)
            alphas = {}
            for s in delt:
                sq = min_empty_circumradius_sq(s, cloud, idx)
                if sq is None:
                    bad.append(f"{s} in the triangulation but not witnessed")
                    continue
                alphas[s] = sq
            values = sorted(alphas.values())
            if not values:
                continue
            for _ in range(radii_count):
                sq_r = values[rng.randrange(len(values))]
                if rng.random() < 0.5:
                    sq_r += Fraction(1, 9)
                for s, sq in alphas.items():
                    if sq <= sq_r:
                        w = omega.get(s)
                        if w is None or w > sq_r:
                            bad.append(
                                f"{s} born at alpha {sq} missing at r2={sq_r}")
    return bad


def check_frame_clearance(cloud, bifn, incr):
    """Every frame vertex must be strictly outside every final support
    sphere; returns mismatch strings."""
    bad = []
    ic = cloud.icoords
    from .filtration import _support_sphere
    for sid, s in enumerate(incr.simplices):
        if incr.gabriel is not None and not incr.gabriel[sid]:
            continue
        sph, _, _ = _support_sphere(s, bifn, cloud)
        for f in cloud.frame_indices:
            if _isphere_cmp(sph, ic[f]) <= 0:
                bad.append(f"frame vertex {f} meets the support sphere of {s}")
    return bad


def run_verification(points, gamma, config: RunConfig = RunConfig(),
                     max_points=12, samples=20) -> VerifyReport:
    """The oracle suite on one input, subsampled to desk scale."""
    report = VerifyReport()
    if len(points) > max_points:
        rng = random.Random(config.seed)
        keep = sorted(rng.sample(range(len(points)), max_points))
        points = [points[i] for i in keep]
        gamma = [gamma[i] for i in keep]
        report.record("subsample", True, f"reduced to {max_points} points")
    cloud, bifn = prepare(points, gamma, config)

    ledgers = {s: scan(cloud, bifn, s) for s in ("naive", "nonlocal", "local")}
    base = ledgers["local"]
    same = all(l.canonical() == base.canonical() for l in ledgers.values())
    report.record("strategy independence", same)
    for l in ledgers.values():
        l.validate()
    report.record("conflict lists are ordered antichains", True)

    triples = derive_triples(base)
    incr = assemble_incr(base, triples, cloud, bifn)
    dense = brute_incr(cloud, bifn)
    report.record("incremental complex equals brute force",
                  incr.simplex_set() == dense.simplices,
                  f"{len(incr)} simplices")
    report.record("brute complex closed under faces",
                  dense.is_closed_under_faces())

    _, _, def_triples = brute_conflicts(cloud, bifn)
    got_triples = {(c, a, b) for c, a, b in triples}
    report.record("conflict triples match the grid definition",
                  got_triples == def_triples,
                  f"{len(got_triples)} triples")

    compute_births(incr, bifn, cloud)
    ok_m = ok_w = ok_rel = True
    for sid, s in enumerate(incr.simplices):
        if incr.sq_m[sid] != miniball_sq_oracle(cloud, s):
            ok_m = False
        if incr.sq_omega[sid] != brute_omega(s, cloud, bifn):
            ok_w = False
        if incr.sq_m[sid] > incr.sq_omega[sid]:
            ok_rel = False
    report.record("enclosing-ball radii exact", ok_m)
    report.record("witness radii exact", ok_w)
    report.record("enclosing-ball radius <= witness radius", ok_rel)

    mono = True
    for sid, s in enumerate(incr.simplices):
        for mid in incr.cofacets[sid]:
            if incr.sq_omega[sid] > incr.sq_omega[mid] \
                    or incr.sq_m[sid] > incr.sq_m[mid]:
                mono = False
    report.record("radii monotone under cofacets", mono)

    bad = check_containment(cloud, bifn, incr, seed=config.seed)
    report.record("alpha sublevel containment", not bad, "; ".join(bad[:3]))

    sample_list = equivalence_samples(cloud, bifn, incr, samples, config.seed)
    bad = check_equivalence(cloud, bifn, incr, sample_list)
    report.record("Betti numbers match the Cech complexes", not bad,
                  "; ".join(bad[:3]))

    bad = check_frame_clearance(cloud, bifn, incr)
    report.record("frame clear of support spheres", not bad, "; ".join(bad[:3]))
    return report
