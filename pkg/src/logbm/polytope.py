"""Rational polytopes: hulls, volumes, Minkowski sums, projections, sections.

Internally a polytope keeps an integer copy of its points (``ipoints / denom``)
so every orientation and volume computation runs on Python ints. Facets are
exposed as :class:`FacetData` pieces with area vector ``a = F*u`` and support
value ``s = <x, a>``; both are rational for rational vertices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, reduce
from typing import NamedTuple, Sequence

from . import hull as _hull
from .errors import DegenerateInput, SingularMatrix, Unbounded, ZeroVector
from .exact import (
    RadicalScalar,
    as_fraction,
    canonical_direction,
    det,
    dot,
    gram,
    inverse,
    lcm_denominators,
    norm_sq,
    nullspace,
    primitive,
    rank,
)

Vector = tuple  # tuple of Fractions


class FacetData(NamedTuple):
    area_vector: tuple
    support_value: Fraction


def as_vector(v) -> tuple:
    return tuple(as_fraction(x) for x in v)


def _to_int(points) -> tuple[list[tuple[int, ...]], int]:
    denom = lcm_denominators(x for p in points for x in p)
    return [tuple(int(x * denom) for x in p) for p in points], denom


def _reduce_int(ipoints, denom):
    g = reduce(math.gcd, (x for p in ipoints for x in p), denom)
    if g > 1:
        ipoints = [tuple(x // g for x in p) for p in ipoints]
        denom //= g
    return ipoints, denom


class Polytope:
    """Convex hull of finitely many points of Q^n.

    Full-dimensional polytopes carry facet data and a positive volume.
    Lower-dimensional ones (segments, squares sitting in R^n) only keep their
    extreme points; they are legal as the second argument of the
    mixed-volume functionals.
    """

    def __init__(self, dim, ipoints, denom, facets, vertex_idx, full):
        self.dim = dim
        self.full = full
        self._denom = denom
        self._ipoints = ipoints  # every point referenced by ``facets``
        self._ifacets = facets
        self._ivertices = tuple(ipoints[i] for i in vertex_idx)

    # construction -------------------------------------------------------
    @classmethod
    def _from_int(cls, ipoints, denom, dim, require_full=True):
        ipoints, denom = _reduce_int(list(dict.fromkeys(ipoints)), denom)
        if not ipoints:
            raise DegenerateInput("empty point set")
        try:
            facets = _hull.hull(ipoints, dim)
        except DegenerateInput:
            if require_full:
                raise
            return cls._lower_dimensional(ipoints, denom, dim)
        used = sorted({i for f in facets for i in f[0]})
        remap = {old: new for new, old in enumerate(used)}
        pts = [ipoints[i] for i in used]
        facets = [(tuple(remap[i] for i in vs), nm, off) for vs, nm, off in facets]
        vidx = _hull.extreme_indices(pts, facets, dim)
        return cls(dim, pts, denom, facets, vidx, True)

    @classmethod
    def _lower_dimensional(cls, ipoints, denom, dim):
        r, chosen = _hull.affine_rank(ipoints)
        if r == 0:
            return cls(dim, ipoints[:1], denom, None, [0], False)
        base = ipoints[chosen[0]]
        diffs = [tuple(a - b for a, b in zip(ipoints[i], base)) for i in chosen[1:]]
        # projecting onto the pivot coordinates is injective on the affine hull
        from .exact import rref

        _, pivots = rref(diffs)
        proj = [tuple(p[c] for c in pivots) for p in ipoints]
        facets = _hull.hull(proj, r)
        vidx = _hull.extreme_indices(proj, facets, r)
        return cls(dim, ipoints, denom, None, vidx, False)

    # basic data -----------------------------------------------------------
    @cached_property
    def vertices(self) -> tuple:
        d = self._denom
        return tuple(tuple(Fraction(x, d) for x in p) for p in self._ivertices)

    @cached_property
    def symmetric(self) -> bool:
        vs = set(self._ivertices)
        return all(tuple(-x for x in v) in vs for v in vs)

    @cached_property
    def volume(self) -> Fraction:
        if not self.full:
            return Fraction(0)
        n = self.dim
        total = sum(f[2] for f in self._ifacets)
        return Fraction(total, self._denom**n * math.factorial(n))

    @cached_property
    def facets(self) -> tuple:
        """Simplicial facet pieces as FacetData (empty for lower-dimensional sets)."""
        if not self.full:
            return ()
        n = self.dim
        qa = self._denom ** (n - 1) * math.factorial(n - 1)
        qs = qa * self._denom
        return tuple(
            FacetData(tuple(Fraction(c, qa) for c in nm), Fraction(off, qs))
            for _, nm, off in self._ifacets
        )

    @cached_property
    def merged_facets(self) -> dict:
        """Facet pieces grouped by outward normal direction.

        Maps the primitive integer outward normal to the summed FacetData.
        """
        groups: dict = {}
        for f in self.facets:
            key = primitive(f.area_vector)
            if key in groups:
                a, s = groups[key]
                groups[key] = (tuple(x + y for x, y in zip(a, f.area_vector)), s + f.support_value)
            else:
                groups[key] = (f.area_vector, f.support_value)
        return {k: FacetData(a, s) for k, (a, s) in groups.items()}

    @cached_property
    def affine_dim(self) -> int:
        if self.full:
            return self.dim
        return _hull.affine_rank(list(self._ivertices))[0]

    @cached_property
    def _hash(self):
        return hash((self.dim, self._denom, frozenset(self._ivertices)))

    def __len__(self):
        return len(self._ivertices)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.dim == other.dim and self._denom == other._denom
                and set(self._ivertices) == set(other._ivertices))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        kind = "" if self.full else f", lower-dimensional"
        return f"Polytope(dim={self.dim}, vertices={len(self._ivertices)}{kind})"

    def key(self) -> str:
        """Short stable digest of the vertex set (for reports)."""
        import hashlib

        text = repr((self.dim, self._denom, sorted(self._ivertices)))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# operations


def convex_hull(points: Sequence, require_full: bool = True) -> Polytope:
    """Exact convex hull of rational points; raises DegenerateInput if not full-dimensional."""
    pts = [as_vector(p) for p in points]
    if not pts:
        raise DegenerateInput("empty point set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("points of mixed dimension")
    if require_full and len(pts) < dim + 1:
        raise DegenerateInput(f"need at least {dim + 1} points in dimension {dim}")
    ipts, denom = _to_int(pts)
    return Polytope._from_int(ipts, denom, dim, require_full)


def point_body(dim: int) -> Polytope:
    """The body {0} (legal as an M argument)."""
    return Polytope._from_int([(0,) * dim], 1, dim, require_full=False)


def volume(P: Polytope) -> Fraction:
    return P.volume


def support(P: Polytope, u) -> Fraction:
    u = as_vector(u)
    d = P._denom
    best = max(sum(a * b for a, b in zip(u, v)) for v in P._ivertices)
    return best / d


def _support_int(P: Polytope, u_int) -> int:
    """max over integer vertices of <u, v> (caller divides by the denominator)."""
    return max(sum(a * b for a, b in zip(u_int, v)) for v in P._ivertices)


def scale(P: Polytope, t) -> Polytope:
    t = as_fraction(t)
    if t == 0:
        return point_body(P.dim)
    pts = [tuple(x * t.numerator for x in p) for p in P._ivertices]
    return Polytope._from_int(pts, P._denom * t.denominator, P.dim, require_full=False)


def negate(P: Polytope) -> Polytope:
    return scale(P, -1)


def _common(P: Polytope, Q: Polytope):
    D = math.lcm(P._denom, Q._denom)
    fp, fq = D // P._denom, D // Q._denom
    pv = [tuple(x * fp for x in p) for p in P._ivertices]
    qv = [tuple(x * fq for x in q) for q in Q._ivertices]
    return pv, qv, D


def minkowski_sum(P: Polytope, Q: Polytope, require_full: bool = False) -> Polytope:
    """Hull of all pairwise vertex sums; the result may be lower-dimensional unless required."""
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    pv, qv, D = _common(P, Q)
    pts = [tuple(a + b for a, b in zip(p, q)) for p in pv for q in qv]
    return Polytope._from_int(pts, D, P.dim, require_full)


def minkowski_vertex_pairs(P: Polytope, Q: Polytope) -> list[tuple[int, int]]:
    """Index pairs (i, j) with P.vertices[i] + Q.vertices[j] a vertex of P + Q."""
    return minkowski_sum_with_pairs(P, Q)[1]


def minkowski_sum_with_pairs(P: Polytope, Q: Polytope):
    """P + Q together with the vertex index pairs that generate its vertices."""
    pv, qv, D = _common(P, Q)
    index = {}
    for i, p in enumerate(pv):
        for j, q in enumerate(qv):
            index.setdefault(tuple(a + b for a, b in zip(p, q)), (i, j))
    S = Polytope._from_int(list(index), D, P.dim, require_full=False)
    g = D // S._denom
    return S, [index[tuple(x * g for x in v)] for v in S._ivertices]


def sum_from_pairs(P: Polytope, Q: Polytope, t, pairs) -> Polytope:
    """P + tQ built only from known vertex index pairs (valid for every t > 0)."""
    t = as_fraction(t)
    D = math.lcm(P._denom, Q._denom * t.denominator)
    fp = D // P._denom
    fq = (D // (Q._denom * t.denominator)) * t.numerator
    pts = [tuple(a * fp + b * fq for a, b in zip(P._ivertices[i], Q._ivertices[j])) for i, j in pairs]
    return Polytope._from_int(pts, D, P.dim, require_full=False)


def linear_image(P: Polytope, T) -> Polytope:
    T = [as_vector(r) for r in T]
    if len(T) != P.dim or any(len(r) != P.dim for r in T):
        raise ValueError("matrix shape does not match dimension")
    if det(T) == 0:
        raise SingularMatrix("linear map is not invertible")
    pts = [tuple(dot(r, v) for r in T) for v in P.vertices]
    return convex_hull(pts, require_full=P.full)


def _content_in_basis(points, basis) -> RadicalScalar:
    """k-content of conv(points) measured inside span(basis) (points assumed in that span
    or projected onto it orthogonally)."""
    k = len(basis)
    if k == 0:
        return RadicalScalar(1)
    G = gram(basis)
    g = det(G)
    if g == 0:
        raise DegenerateInput("basis vectors are linearly dependent")
    Ginv = inverse(G)
    coords = []
    for x in points:
        bx = [dot(b, x) for b in basis]
        coords.append(tuple(dot(row, bx) for row in Ginv))
    body = convex_hull(coords, require_full=False)
    return RadicalScalar(body.volume, g)


def subspace_projection_volume(P: Polytope, basis) -> RadicalScalar:
    """|P | H|_{dim H} for H = span(basis), as an exact q*sqrt(g)."""
    basis = [as_vector(b) for b in basis]
    if basis and rank(basis) < len(basis):
        raise DegenerateInput("basis vectors are linearly dependent")
    if any(len(b) != P.dim for b in basis):
        raise ValueError("basis dimension mismatch")
    return _content_in_basis(P.vertices, basis)


def complement_basis(vectors, dim: int) -> list:
    """Rational basis of span(vectors)^perp."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    return [as_vector(b) for b in nullspace(vectors, dim)]


def projection_onto_complement(P: Polytope, vectors) -> RadicalScalar:
    """|P | span(vectors)^perp|, the quantity written |K|v^perp| or |K|span(v,w)^perp|."""
    vectors = [as_vector(v) for v in vectors]
    if rank(vectors) < len(vectors):
        raise DegenerateInput("vectors are linearly dependent")
    return subspace_projection_volume(P, complement_basis(vectors, P.dim))


def central_section_volume(P: Polytope, u) -> RadicalScalar:
    """|P ∩ u^perp|_{n-1}."""
    u = as_vector(u)
    if all(x == 0 for x in u):
        raise ZeroVector("section direction is zero")
    vals = [dot(u, v) for v in P.vertices]
    pts = [v for v, h in zip(P.vertices, vals) if h == 0]
    pos = [(v, h) for v, h in zip(P.vertices, vals) if h > 0]
    neg = [(v, h) for v, h in zip(P.vertices, vals) if h < 0]
    for p, hp in pos:
        for q, hq in neg:
            lam = hp / (hp - hq)
            pts.append(tuple(a + lam * (b - a) for a, b in zip(p, q)))
    basis = complement_basis([u], P.dim)
    return _content_in_basis(pts, basis)


def inradius_sq(P: Polytope) -> Fraction:
    """Squared inradius of a symmetric body: min over facets of s^2/|a|^2."""
    return min(f.support_value**2 / norm_sq(f.area_vector) for f in P.merged_facets.values())


def diameter_sq(P: Polytope) -> Fraction:
    vs = P._ivertices
    best = 0
    for i in range(len(vs)):
        a = vs[i]
        for j in range(i + 1, len(vs)):
            b = vs[j]
            d2 = sum((x - y) ** 2 for x, y in zip(a, b))
            if d2 > best:
                best = d2
    return Fraction(best, P._denom**2)


def max_inscribed_scaling(M: Polytope, K: Polytope) -> Fraction:
    """Largest lambda with lambda*M inside K (both symmetric)."""
    best = None
    for f in K.merged_facets.values():
        h = support(M, f.area_vector)
        if h > 0:
            r = f.support_value / h
            if best is None or r < best:
                best = r
    if best is None:
        raise Unbounded("M = {0} fits in K at every scale")
    return best


def normal_directions(P: Polytope) -> list:
    """Canonical (sign-normalised) directions of the facet normals, one per antipodal class."""
    return sorted({canonical_direction(k) for k in P.merged_facets})
