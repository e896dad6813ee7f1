"""Combinatorial cylinder detection on merged facet normals.

A symmetric polytope is a cylinder C + [-v, v] exactly when one antipodal
pair of facet normals (the caps) is not orthogonal to v and every other
normal is. None of the detectors here build C; they only count normals.
"""

from __future__ import annotations

from .exact import canonical_direction, dot, nullspace, primitive, rank
from .polytope import Polytope, as_vector, normal_directions


def _direction(v):
    v = as_vector(v)
    if not any(v):
        raise ValueError("direction must be nonzero")
    return canonical_direction(primitive(v))


def cylinder_cap(K: Polytope, v):
    """Canonical cap normal if K is a cylinder with axis parallel to v, else None."""
    v = as_vector(v)
    hits = [d for d in normal_directions(K) if dot(d, v) != 0]
    return hits[0] if len(hits) == 1 else None


def is_cylinder_along(K: Polytope, v) -> bool:
    return cylinder_cap(K, v) is not None


def cylinder_axes(K: Polytope) -> list:
    """All (axis, cap normal) pairs for which K is a cylinder, canonical directions."""
    dirs = normal_directions(K)
    out = []
    for cap in dirs:
        others = [d for d in dirs if d != cap]
        if others and rank(others) == K.dim - 1:
            axis = canonical_direction(nullspace(others, K.dim)[0])
            out.append((axis, cap))
    return out


def has_base_perpendicular_to(K: Polytope, u) -> bool:
    """K = C + [-v, v] with C inside u^perp for some v (equality in the section bound)."""
    cap = _direction(u)
    dirs = normal_directions(K)
    if cap not in dirs:
        return False
    others = [d for d in dirs if d != cap]
    return not others or rank(others) <= K.dim - 1


def is_cylinder_axis_base(K: Polytope, u, v) -> bool:
    """K = C + [-v, v] with C inside u^perp."""
    cap = _direction(u)
    v = as_vector(v)
    dirs = normal_directions(K)
    if cap not in dirs or dot(cap, v) == 0:
        return False
    return all(dot(d, v) == 0 for d in dirs if d != cap)
