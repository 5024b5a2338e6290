"""Sublevel Delaunay and Delaunay-Cech trifiltrations of finite point
clouds equipped with two scalar functions.

The public surface: exact geometric predicates and enclosing balls
(``geometry``), a mutable Delaunay triangulation with conflict reporting
(``delaunay``), the grid sweeps that collect conflict pairs (``scan``), the
face-closed complex they span (``complexes``), per-simplex birth radii
(``filtration``), brute-force reference implementations (``oracle``), and
text input / scc2020 output (``io``).  ``pipeline.build_trifiltration``
runs everything end to end.
"""

__version__ = "0.1.0"

from .complexes import IncrComplex, assemble_incr
from .delaunay import BWConflict, Triangulation, init_delta
from .errors import (DegenerateInputError, GeneralPositionError, ParseError,
                     TrifiltError)
from .filtration import (BirthData, FiltrationOutput, compute_all_omega,
                         compute_m, gamma_join, is_incr_gabriel)
from .geometry import (Point, Side, Sphere, circumsphere, in_sphere, miniball,
                       miniball_on_boundary, orientation)
from .io import RunConfig, parse_input, prepare, read_scc2020, write_scc2020
from .orders import BiFunction, build_orders
from .pipeline import BuildResult, build_trifiltration
from .points import PointCloud
from .scan import ConflictLedger, ConflictPair, derive_triples, scan

__all__ = [
    "BWConflict", "BiFunction", "BirthData", "BuildResult", "ConflictLedger",
    "ConflictPair", "DegenerateInputError", "FiltrationOutput",
    "GeneralPositionError", "IncrComplex", "ParseError", "Point", "PointCloud",
    "RunConfig", "Side", "Sphere", "Triangulation", "TrifiltError",
    "assemble_incr", "build_orders", "build_trifiltration", "circumsphere",
    "compute_all_omega", "compute_m", "derive_triples", "gamma_join",
    "in_sphere", "init_delta", "is_incr_gabriel", "miniball",
    "miniball_on_boundary", "orientation", "parse_input", "prepare",
    "read_scc2020", "scan", "write_scc2020",
]
