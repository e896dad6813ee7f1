"""Exact convex hulls of integer point sets (beneath-beyond insertion).

Facets come out as simplicial pieces ``(vertex_indices, normal, offset)``
with an outward integer normal and ``normal . x <= offset`` on the hull. The
normal is the generalized cross product of the edge vectors, so its length is
(d-1)! times the piece's (d-1)-content. Coplanar pieces are never merged here.

A float Qhull pass is used only to discard obviously interior points; every
discarded point is re-checked exactly against the final facets.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateInput
from .exact import det_int

try:  # scipy is optional for correctness, only used as a speed filter
    from scipy.spatial import ConvexHull, QhullError
except ImportError:  # pragma: no cover
    ConvexHull = None

    class QhullError(Exception):
        pass


# smallest point count for which the Qhull pre-filter is worth its overhead
FILTER_MIN_POINTS = 24
_FILTER_TOL = 1e-9


def _cross(rows, d):
    """Generalized cross product of d-1 integer vectors in Z^d."""
    if d == 2:
        (x, y), = rows
        return (y, -x)
    if d == 3:
        (a0, a1, a2), (b0, b1, b2) = rows
        return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    if d == 4:
        r0, r1, r2 = rows
        m = {(a, b): r1[a] * r2[b] - r1[b] * r2[a] for a in range(4) for b in range(a + 1, 4)}
        out = []
        for k in range(4):
            a, b, c = [x for x in range(4) if x != k]
            det3 = r0[a] * m[b, c] - r0[b] * m[a, c] + r0[c] * m[a, b]
            out.append(-det3 if k % 2 else det3)
        return tuple(out)
    if d == 5:
        # Laplace expansion along the first two rows
        r0, r1, r2, r3 = rows
        A = {(a, b): r0[a] * r1[b] - r0[b] * r1[a] for a in range(5) for b in range(a + 1, 5)}
        B = {(a, b): r2[a] * r3[b] - r2[b] * r3[a] for a in range(5) for b in range(a + 1, 5)}
        out = []
        for k in range(5):
            c0, c1, c2, c3 = [x for x in range(5) if x != k]
            det4 = (A[c0, c1] * B[c2, c3] - A[c0, c2] * B[c1, c3] + A[c0, c3] * B[c1, c2]
                    + A[c1, c2] * B[c0, c3] - A[c1, c3] * B[c0, c2] + A[c2, c3] * B[c0, c1])
            out.append(-det4 if k % 2 else det4)
        return tuple(out)
    out = []
    for k in range(d):
        minor = [r[:k] + r[k + 1:] for r in rows]
        c = det_int(minor)
        out.append(-c if k % 2 else c)
    return tuple(out)


def affine_rank(points) -> tuple[int, list[int]]:
    """Affine rank of an integer point list and indices of an affinely independent subset."""
    if not points:
        return -1, []
    base = points[0]
    chosen = [0]
    echelon: list[tuple[int, list[int]]] = []  # (pivot column, row)
    for i in range(1, len(points)):
        v = [a - b for a, b in zip(points[i], base)]
        for col, row in echelon:
            if v[col]:
                f, g = row[col], v[col]
                v = [f * x - g * y for x, y in zip(v, row)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is None:
            continue
        gcd = math.gcd(*v)
        v = [x // gcd for x in v]
        echelon.append((piv, v))
        chosen.append(i)
        if len(chosen) == len(base) + 1:
            break
    return len(chosen) - 1, chosen


def _exact_hull(points, order, d):
    """Beneath-beyond over ``points`` visited in ``order``. Returns facet list."""
    ordered = [points[i] for i in order]
    r, simplex_local = affine_rank(ordered)
    if r < d:
        raise DegenerateInput(f"affine hull has dimension {r} < {d}")
    simplex = [order[i] for i in simplex_local]
    centre = [sum(points[i][k] for i in simplex) for k in range(d)]
    scale = d + 1

    facets: dict[int, tuple] = {}
    ridges: dict[tuple, list[int]] = {}
    next_id = 0

    # int64 visibility tests stay exact while every |normal entry| is below
    # ``limit``; the first facet exceeding it switches to Python integers
    bound = max(abs(x) for i in order for x in points[i]) or 1
    limit = 2**62 // (2 * d * bound)
    use_np = limit > 0
    if use_np:
        P = np.array(points, dtype=np.int64)
        N = np.zeros((64, d), dtype=np.int64)
        O = np.zeros(64, dtype=np.int64)
        alive = np.zeros(64, dtype=bool)

    def add_facet(verts):
        nonlocal next_id, N, O, alive, use_np
        verts = tuple(sorted(verts))
        p0 = points[verts[0]]
        rows = [tuple(a - b for a, b in zip(points[v], p0)) for v in verts[1:]]
        normal = _cross(rows, d)
        offset = sum(a * b for a, b in zip(normal, p0))
        if sum(a * b for a, b in zip(normal, centre)) > scale * offset:
            normal = tuple(-a for a in normal)
            offset = -offset
        fid = next_id
        next_id += 1
        facets[fid] = (verts, normal, offset)
        if use_np and max(abs(a) for a in normal) >= limit:
            use_np = False
        if use_np:
            if fid >= len(O):
                N = np.concatenate([N, np.zeros_like(N)])
                O = np.concatenate([O, np.zeros_like(O)])
                alive = np.concatenate([alive, np.zeros_like(alive)])
            N[fid] = normal
            O[fid] = offset
            alive[fid] = True
        for k in range(d):
            ridges.setdefault(verts[:k] + verts[k + 1:], []).append(fid)

    def drop_facet(fid):
        verts = facets.pop(fid)[0]
        if use_np:
            alive[fid] = False
        for k in range(d):
            key = verts[:k] + verts[k + 1:]
            lst = ridges[key]
            lst.remove(fid)
            if not lst:
                del ridges[key]

    for k in range(d + 1):
        add_facet(simplex[:k] + simplex[k + 1:])

    in_simplex = set(simplex)
    for pi in order:
        if pi in in_simplex:
            continue
        if use_np:
            m = next_id
            visible = np.flatnonzero(alive[:m] & (N[:m] @ P[pi] > O[:m])).tolist()
        else:
            p = points[pi]
            visible = [fid for fid, (_, nm, off) in facets.items()
                       if sum(a * b for a, b in zip(nm, p)) > off]
        if not visible:
            continue
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for k in range(d):
                key = verts[:k] + verts[k + 1:]
                if any(f not in vis for f in ridges[key]):
                    horizon.append(key)
        for fid in visible:
            drop_facet(fid)
        for key in horizon:
            add_facet(key + (pi,))
    return list(facets.values())


def _hull_1d(points):
    lo = min(range(len(points)), key=lambda i: points[i][0])
    hi = max(range(len(points)), key=lambda i: points[i][0])
    if points[lo][0] == points[hi][0]:
        raise DegenerateInput("affine hull has dimension 0 < 1")
    return [((hi,), (1,), points[hi][0]), ((lo,), (-1,), -points[lo][0])]


def _float_candidates(points, d):
    """Indices that may be hull vertices (Qhull + margin), Qhull vertices first."""
    if ConvexHull is None or len(points) < FILTER_MIN_POINTS or d < 2:
        return None
    bound = max(abs(x) for p in points for x in p)
    if bound == 0 or bound > 1e15:
        return None
    arr = np.array(points, dtype=float)
    try:
        hull = ConvexHull(arr)
    except (QhullError, ValueError):
        return None
    eq = hull.equations
    dist = arr @ eq[:, :d].T + eq[:, d]
    worst = dist.max(axis=1)
    near = np.flatnonzero(worst > -_FILTER_TOL * bound)
    first = list(dict.fromkeys(int(i) for i in hull.vertices))
    seen = set(first)
    return first + [int(i) for i in near if int(i) not in seen]


def _outside(points, idx, facets):
    """Indices in ``idx`` lying strictly outside some facet (exact)."""
    if not idx or not facets:
        return list(idx)
    normals = [f[1] for f in facets]
    offsets = [f[2] for f in facets]
    mx_n = max(abs(x) for nm in normals for x in nm)
    mx_p = max(abs(x) for i in idx for x in points[i])
    mx_o = max(abs(o) for o in offsets)
    d = len(normals[0])
    if mx_n * mx_p * d < 2**62 and mx_o < 2**62:
        P = np.array([points[i] for i in idx], dtype=np.int64)
        N = np.array(normals, dtype=np.int64)
        O = np.array(offsets, dtype=np.int64)
        bad = ((P @ N.T) > O).any(axis=1)
        return [i for i, b in zip(idx, bad) if b]
    out = []
    for i in idx:
        p = points[i]
        if any(sum(a * b for a, b in zip(nm, p)) > off for nm, off in zip(normals, offsets)):
            out.append(i)
    return out


def hull(points, d=None):
    """Exact hull of distinct integer points spanning Z^d.

    Returns the list of simplicial facet pieces; indices refer to ``points``.
    Raises DegenerateInput if the points are not full-dimensional.
    """
    if d is None:
        d = len(points[0])
    if d == 1:
        return _hull_1d(points)
    cand = _float_candidates(points, d)
    if cand is None:
        return _exact_hull(points, list(range(len(points))), d)
    facets = _exact_hull(points, cand, d)
    rest = sorted(set(range(len(points))) - set(cand))
    missed = _outside(points, rest, facets)
    while missed:
        # the float filter dropped a true hull point; redo with it included
        cand = cand + missed
        facets = _exact_hull(points, cand, d)
        rest = sorted(set(rest) - set(missed))
        missed = _outside(points, rest, facets)
    return facets


def _rank_int(vectors) -> int:
    echelon: list[tuple[int, list[int]]] = []
    for v in vectors:
        v = list(v)
        for col, row in echelon:
            if v[col]:
                f, g = row[col], v[col]
                v = [f * x - g * y for x, y in zip(v, row)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is not None:
            gcd = math.gcd(*v)
            echelon.append((piv, [x // gcd for x in v]))
    return len(echelon)


def primitive_int(v):
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def extreme_indices(points, facets, d) -> list[int]:
    """Indices of triangulation vertices that are genuine vertices of the hull.

    A boundary point is a vertex exactly when the outward normals of the
    facets through it span R^d.
    """
    incident: dict[int, set] = {}
    for verts, normal, _ in facets:
        pn = primitive_int(normal)
        for v in verts:
            incident.setdefault(v, set()).add(pn)
    out = []
    for v in sorted(incident):
        normals = incident[v]
        if len(normals) >= d and _rank_int(normals) == d:
            out.append(v)
    return out
