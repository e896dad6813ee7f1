"""Double-precision geometry via Qhull, used by the float checking mode.

Nothing here touches the exact hull: facets, volumes and mixed volumes are
recomputed from float vertex coordinates, so float mode is an independent
route that can be compared against the exact results.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull

from .polytope import Polytope, complement_basis


def points(P: Polytope) -> np.ndarray:
    return np.array([[float(x) for x in v] for v in P.vertices], dtype=float)


def _cofactor_normals(simplices: np.ndarray) -> np.ndarray:
    """Generalized cross products of the edge vectors of each (d-1)-simplex."""
    rows = simplices[:, 1:, :] - simplices[:, :1, :]
    d = simplices.shape[2]
    out = np.empty((simplices.shape[0], d))
    for k in range(d):
        minor = np.delete(rows, k, axis=2)
        out[:, k] = (-1) ** k * np.linalg.det(minor) if d > 1 else 1.0
    return out


def _content(pts: np.ndarray) -> float:
    k = pts.shape[1]
    if k == 0:
        return 1.0
    if k == 1:
        return float(pts.max() - pts.min())
    try:
        return float(ConvexHull(pts).volume)
    except Exception:  # flat point set
        return 0.0


class FloatBody:
    """Float facet pieces (area vectors and support values) and volume of a polytope."""

    def __init__(self, P: Polytope):
        self.dim = P.dim
        self.vertices = points(P)
        if not P.full:
            self.volume = 0.0
            self.facets = []
            return
        hull = ConvexHull(self.vertices)
        self.volume = float(hull.volume)
        simp = self.vertices[hull.simplices]
        normals = _cofactor_normals(simp) / math.factorial(self.dim - 1)
        sign = np.sign(np.einsum("ij,ij->i", normals, hull.equations[:, :-1]))
        normals *= sign[:, None]
        supports = np.einsum("ij,ij->i", normals, simp[:, 0, :])
        # triangulated Qhull output can contain flat slivers; they carry no area
        size = np.abs(normals).max(axis=1)
        keep = size > 1e-12 * max(size.max(), 1.0)
        self.facets = [(tuple(float(x) for x in a), float(s))
                       for a, s in zip(normals[keep], supports[keep])]

    def support(self, u) -> float:
        u = np.array([float(x) for x in u])
        return float((self.vertices @ u).max())


def minkowski_volume(K: Polytope, M: Polytope, t: float) -> float:
    a = points(K)
    b = points(M) * t
    sums = (a[:, None, :] + b[None, :, :]).reshape(-1, K.dim)
    return float(ConvexHull(sums).volume)


def mixed_volumes(K: Polytope, M: Polytope) -> list[float]:
    """Float V_0..V_n from Qhull volumes of K + tM at t = 0..n."""
    n = K.dim
    ts = np.arange(n + 1, dtype=float)
    vols = [minkowski_volume(K, M, t) for t in ts]
    coeffs = np.linalg.solve(np.vander(ts, n + 1, increasing=True), np.array(vols))
    return [float(coeffs[k]) / math.comb(n, k) for k in range(n + 1)]


def content_in_basis(pts: np.ndarray, basis) -> float:
    if not basis:
        return 1.0
    B = np.array([[float(x) for x in b] for b in basis])
    G = B @ B.T
    coords = np.linalg.solve(G, B @ pts.T).T
    return _content(coords) * math.sqrt(np.linalg.det(G))


def projection_onto_complement(P: Polytope, vectors) -> float:
    return content_in_basis(points(P), complement_basis(vectors, P.dim))


def central_section(P: Polytope, u) -> float:
    V = points(P)
    uf = np.array([float(x) for x in u])
    h = V @ uf
    pts = [V[i] for i in np.flatnonzero(h == 0)]
    for i in np.flatnonzero(h > 0):
        for j in np.flatnonzero(h < 0):
            lam = h[i] / (h[i] - h[j])
            pts.append(V[i] + lam * (V[j] - V[i]))
    return content_in_basis(np.array(pts), complement_basis([u], P.dim))
