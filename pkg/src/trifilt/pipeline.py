"""End-to-end driver: prepare, scan, assemble, compute births, emit."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .complexes import assemble_incr
from .datasets import interlevel
from .filtration import compute_births, emit_filtration
from .io import RunConfig, prepare
from .scan import derive_triples, scan


@dataclass
class BuildResult:
    cloud: object
    bifn: object
    ledger: object
    triples: list
    incr: object
    filtrations: dict
    timings: dict = field(default_factory=dict)


def build_trifiltration(points, gamma, config: RunConfig = RunConfig(),
                        record_points=True) -> BuildResult:
    """Run the whole pipeline on raw points and function values.

    gamma is a list of value pairs, or of single values when
    config.interlevel is set (each becomes (-value, value)).
    """
    config.validate()
    if config.interlevel:
        gamma = interlevel(v[0] if isinstance(v, (tuple, list)) else v
                           for v in gamma)
    t0 = time.perf_counter()
    cloud, bifn = prepare(points, gamma, config)
    t1 = time.perf_counter()
    ledger = scan(cloud, bifn, config.strategy, record_points=record_points)
    triples = derive_triples(ledger)
    incr = assemble_incr(ledger, triples, cloud, bifn)
    t2 = time.perf_counter()
    kinds = ("del", "delcech") if config.filtration == "both" \
        else (config.filtration,)
    compute_births(incr, bifn, cloud,
                   want_m="delcech" in kinds, want_omega="del" in kinds)
    t3 = time.perf_counter()
    filtrations = {kind: emit_filtration(incr, kind, bifn) for kind in kinds}
    t4 = time.perf_counter()
    timings = {"prepare_s": t1 - t0, "scan_s": t2 - t1,
               "omega_s": t3 - t2, "emit_s": t4 - t3, "total_s": t4 - t0}
    return BuildResult(cloud, bifn, ledger, triples, incr, filtrations, timings)
