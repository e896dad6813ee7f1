"""Named bodies and the JSON body-spec format.

A body spec is a tree of tagged records. Rationals are strings ``"p/q"`` or
integers; coordinate indices are 0-based::

    {"kind": "cylinder",
     "base": {"kind": "vertices", "points": [["0", "1"], ["0", "-1"]]},
     "axis": ["1", "0"]}

Kinds: vertices, cube, box, crossPolytope, segment, square2d, zonotope,
cylinder, linearImage, minkowskiSum.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import DegenerateInput, RetryExhausted, SpecError
from .exact import format_rational, parse_rational
from .polytope import (
    Polytope,
    as_vector,
    convex_hull,
    linear_image,
    minkowski_sum,
    point_body,
)

RANDOM_ALGORITHM = "numpy.random.default_rng (PCG64)"
RANDOM_MAX_RETRIES = 100


# ---------------------------------------------------------------------------
# constructors


def cube(n: int, half_side=1) -> Polytope:
    h = Fraction(half_side)
    return convex_hull(itertools.product((-h, h), repeat=n))


def box(half_sides) -> Polytope:
    """Origin-centred coordinate box with the given half-side lengths (zeros allowed)."""
    hs = [Fraction(x) for x in half_sides]
    if any(x < 0 for x in hs):
        raise ValueError("half-sides must be non-negative")
    pts = itertools.product(*[(-x, x) for x in hs])
    return convex_hull(pts, require_full=all(x > 0 for x in hs))


def cross_polytope(n: int) -> Polytope:
    pts = []
    for i in range(n):
        for s in (1, -1):
            e = [0] * n
            e[i] = s
            pts.append(e)
    return convex_hull(pts)


def segment(v) -> Polytope:
    """The symmetric segment [-v, v]."""
    v = as_vector(v)
    return convex_hull([v, tuple(-x for x in v)], require_full=False)


def square2d(n: int, i: int, j: int) -> Polytope:
    """[-e_i, e_i] + [-e_j, e_j] inside R^n (0-based indices)."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"bad coordinate pair ({i}, {j}) for n={n}")
    hs = [0] * n
    hs[i] = hs[j] = 1
    return box(hs)


def zonotope(generators) -> Polytope:
    gens = [as_vector(g) for g in generators]
    if not gens:
        raise ValueError("zonotope needs at least one generator")
    Z = segment(gens[0])
    for g in gens[1:]:
        Z = minkowski_sum(Z, segment(g))
    return Z


def cylinder(base: Polytope, axis) -> Polytope:
    return minkowski_sum(base, segment(axis))


def symmetric_hull(points, require_full=True) -> Polytope:
    pts = [as_vector(p) for p in points]
    pts += [tuple(-x for x in p) for p in pts]
    return convex_hull(pts, require_full=require_full)


def random_symmetric_polytope(n: int, k: int, seed: int, coord_bound: int = 10) -> Polytope:
    """conv(±p_1, ..., ±p_k) for k seeded random nonzero integer points.

    Draws come from ``numpy.random.default_rng(seed)``; a draw that is not
    full-dimensional is discarded and replaced by a fresh one.
    """
    if n < 2 or k < n or coord_bound < 1:
        raise ValueError("need n >= 2, k >= n, coord_bound >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_MAX_RETRIES):
        pts = []
        while len(pts) < k:
            p = tuple(int(x) for x in rng.integers(-coord_bound, coord_bound + 1, size=n))
            if any(p):
                pts.append(p)
        try:
            return symmetric_hull(pts)
        except DegenerateInput:
            continue
    raise RetryExhausted(f"no full-dimensional draw in {RANDOM_MAX_RETRIES} attempts")


# ---------------------------------------------------------------------------
# spec parsing


def _vec(value, field):
    if not isinstance(value, list) or not value:
        raise SpecError("expected a non-empty list of rationals", field)
    return tuple(parse_rational(x, f"{field}[{i}]") for i, x in enumerate(value))


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"expected an integer, got {value!r}", field)
    return value


def _get(spec, key, field):
    if key not in spec:
        raise SpecError("missing field", f"{field}.{key}")
    return spec[key]


def construct(spec: dict, require_full: bool = False, field: str = "body") -> Polytope:
    """Resolve a body spec (parsed JSON) into an exact Polytope."""
    if not isinstance(spec, dict):
        raise SpecError("body spec must be an object", field)
    kind = _get(spec, "kind", field)
    try:
        body = _construct(kind, spec, field)
    except (ValueError, DegenerateInput) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc), field) from exc
    if require_full and not body.full:
        raise DegenerateInput(f"{field}: body is not full-dimensional")
    if not body.symmetric:
        raise SpecError("body is not origin-symmetric", field)
    return body


def _construct(kind, spec, field):
    if kind == "vertices":
        pts = _get(spec, "points", field)
        if not isinstance(pts, list) or not pts:
            raise SpecError("expected a non-empty list of points", f"{field}.points")
        vecs = [_vec(p, f"{field}.points[{i}]") for i, p in enumerate(pts)]
        if len({len(v) for v in vecs}) != 1:
            raise SpecError("points of mixed dimension", f"{field}.points")
        if spec.get("symmetrize", False):
            return symmetric_hull(vecs, require_full=False)
        return convex_hull(vecs, require_full=False)
    if kind == "cube":
        n = _int(_get(spec, "dim", field), f"{field}.dim")
        half = parse_rational(spec.get("halfSide", 1), f"{field}.halfSide")
        return cube(n, half)
    if kind == "box":
        hs = _vec(_get(spec, "halfSides", field), f"{field}.halfSides")
        return box(hs)
    if kind == "crossPolytope":
        return cross_polytope(_int(_get(spec, "dim", field), f"{field}.dim"))
    if kind == "segment":
        return segment(_vec(_get(spec, "vector", field), f"{field}.vector"))
    if kind == "square2d":
        n = _int(_get(spec, "dim", field), f"{field}.dim")
        i = _int(_get(spec, "i", field), f"{field}.i")
        j = _int(_get(spec, "j", field), f"{field}.j")
        return square2d(n, i, j)
    if kind == "zonotope":
        gens = _get(spec, "generators", field)
        if not isinstance(gens, list) or not gens:
            raise SpecError("expected a non-empty generator list", f"{field}.generators")
        return zonotope([_vec(g, f"{field}.generators[{i}]") for i, g in enumerate(gens)])
    if kind == "cylinder":
        base = construct(_get(spec, "base", field), field=f"{field}.base")
        axis = _vec(_get(spec, "axis", field), f"{field}.axis")
        return cylinder(base, axis)
    if kind == "linearImage":
        base = construct(_get(spec, "base", field), field=f"{field}.base")
        rows = _get(spec, "matrix", field)
        if not isinstance(rows, list):
            raise SpecError("expected a matrix (list of rows)", f"{field}.matrix")
        T = [_vec(r, f"{field}.matrix[{i}]") for i, r in enumerate(rows)]
        return linear_image(base, T)
    if kind == "minkowskiSum":
        ops = _get(spec, "operands", field)
        if not isinstance(ops, list) or not ops:
            raise SpecError("expected a non-empty operand list", f"{field}.operands")
        bodies = [construct(o, field=f"{field}.operands[{i}]") for i, o in enumerate(ops)]
        out = bodies[0]
        for b in bodies[1:]:
            out = minkowski_sum(out, b)
        return out
    raise SpecError(f"unknown body kind {kind!r}", f"{field}.kind")


def to_spec(P: Polytope) -> dict:
    """Serialize a polytope as a ``vertices`` spec (exact, round-trips through construct)."""
    return {
        "kind": "vertices",
        "points": [[format_rational(x) for x in v] for v in sorted(P.vertices)],
    }


def zero_body(n: int) -> Polytope:
    return point_body(n)
