"""Exact verification of the local log-Brunn-Minkowski inequality on polytopes.

Bodies are origin-symmetric polytopes with rational vertices; every
functional, mixed volume and inequality side is computed exactly with
``fractions.Fraction`` (lower-dimensional volumes as ``q*sqrt(g)``).
A float mode built on Qhull gives an independent cross-check.
"""

__version__ = "0.1.0"

from .bodies import (
    box,
    construct,
    cross_polytope,
    cube,
    cylinder,
    random_symmetric_polytope,
    segment,
    square2d,
    to_spec,
    zonotope,
)
from .checkers import CheckReport, Tolerances
from .errors import (
    DegenerateInput,
    InternalInconsistency,
    LogBMError,
    ScenarioInconclusive,
    SpecError,
)
from .exact import RadicalScalar
from .functionals import (
    MaxForm,
    SumForm,
    logbm_gap,
    mixed_volume_pair,
    mixed_volumes,
    surface_linear,
    surface_quadratic,
    weighted_surface_quadratic,
)
from .polytope import Polytope, convex_hull, minkowski_sum, support
