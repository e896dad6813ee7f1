"""Surface-measure functionals and mixed volumes of polytopes.

Every functional is a sum over facet pieces ``(a, s)``. Because the
integrands are positively homogeneous (of degree 1 in ``a`` for linear
sums, and of the form ``phi(a)^2 / s`` otherwise), the values do not depend on
how a facet is cut into coplanar pieces.

The ``*_from_facets`` helpers are written against plain arithmetic so they
work with exact (Fraction) and float facet lists alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .errors import InternalInconsistency, ZeroVector
from .exact import as_fraction, canonical_direction, dot, solve
from .polytope import (
    Polytope,
    as_vector,
    convex_hull,
    minkowski_sum,
    minkowski_sum_with_pairs,
    sum_from_pairs,
    support,
)


# ---------------------------------------------------------------------------
# semi-norms


@dataclass(frozen=True)
class MaxForm:
    """||x|| = max over v in omega of |<x, v>|  (support function of conv(±omega))."""

    omega: tuple

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(as_vector(v) for v in self.omega))

    def __call__(self, x):
        if not self.omega:
            return 0
        return max(abs(dot(x, v)) for v in self.omega)

    @property
    def dim(self):
        return len(self.omega[0])

    def directions(self):
        return [v for v in self.omega if any(v)]

    def body(self) -> Polytope:
        pts = [v for v in self.omega] + [tuple(-x for x in v) for v in self.omega]
        return convex_hull(pts, require_full=False)


@dataclass(frozen=True)
class SumForm:
    """||x|| = sum of alpha_i |<x, v_i>|  (support function of the zonotope sum alpha_i [-v_i, v_i])."""

    generators: tuple  # of (alpha, v)

    def __post_init__(self):
        gens = []
        for alpha, v in self.generators:
            alpha = as_fraction(alpha)
            if alpha < 0:
                raise ValueError("SumForm weights must be non-negative")
            gens.append((alpha, as_vector(v)))
        object.__setattr__(self, "generators", tuple(gens))

    def __call__(self, x):
        return sum(alpha * abs(dot(x, v)) for alpha, v in self.generators)

    @property
    def dim(self):
        return len(self.generators[0][1])

    def directions(self):
        return [v for alpha, v in self.generators if alpha != 0 and any(v)]

    def body(self) -> Polytope:
        from .bodies import zonotope, zero_body

        gens = [tuple(alpha * x for x in v) for alpha, v in self.generators if alpha != 0 and any(v)]
        return zonotope(gens) if gens else zero_body(self.dim)


SemiNorm = MaxForm | SumForm


def seminorm_eval(N: SemiNorm, x):
    return N(as_vector(x))


def rank_one_direction(N: SemiNorm):
    """Canonical direction v if N = c|<., v>| for some c > 0; None if N has rank >= 2.

    Returns the empty tuple for the zero semi-norm.
    """
    dirs = {canonical_direction(v) for v in N.directions()}
    if not dirs:
        return ()
    if len(dirs) == 1:
        return dirs.pop()
    return None


# ---------------------------------------------------------------------------
# facet sums (exact or float)


def surface_linear_from_facets(facets, N):
    return sum(N(a) for a, _ in facets)


def surface_quadratic_from_facets(facets, N):
    total = 0
    for a, s in facets:
        v = N(a)
        if v:
            total += v * v / s
    return total


def weighted_quadratic_from_facets(facets, h):
    """sum h(a)^2 / s for a support function ``h``."""
    total = 0
    for a, s in facets:
        v = h(a)
        if v:
            total += v * v / s
    return total


def cauchy_from_facets(facets, v):
    return sum(abs(dot(a, v)) for a, _ in facets) / 2


# ---------------------------------------------------------------------------
# exact public API


def surface_linear(K: Polytope, N: SemiNorm) -> Fraction:
    """Integral of ||n_x|| over the boundary of K."""
    return Fraction(surface_linear_from_facets(K.facets, N))


def surface_quadratic(K: Polytope, N: SemiNorm) -> Fraction:
    """Integral of ||n_x||^2 / <x, n_x> over the boundary of K."""
    return Fraction(surface_quadratic_from_facets(K.facets, N))


def weighted_surface_quadratic(K: Polytope, M: Polytope) -> Fraction:
    """Integral of h_M(n_x)^2 / <x, n_x> over the boundary of K."""
    return Fraction(weighted_quadratic_from_facets(K.facets, lambda a: support(M, a)))


def first_variation(K: Polytope, M: Polytope) -> Fraction:
    """n V_1(K, M) from the surface-measure representation: sum of h_M(a_f)."""
    return sum((support(M, f.area_vector) for f in K.facets), Fraction(0))


def cauchy_projection(K: Polytope, v) -> Fraction:
    """(1/2) sum |<a_f, v>|, which equals |v| * |K | v^perp|."""
    v = as_vector(v)
    if not any(v):
        raise ZeroVector("projection direction is zero")
    return Fraction(cauchy_from_facets(K.facets, v))


# ---------------------------------------------------------------------------
# mixed volumes


def fit_polynomial(xs, ys) -> list[Fraction]:
    """Exact coefficients c_0..c_m of the polynomial through (xs, ys)."""
    rows = [[Fraction(x) ** k for k in range(len(xs))] for x in xs]
    return solve(rows, list(ys))


@dataclass(frozen=True)
class MixedVolumeVector:
    """V_0..V_n with V_k = (n-k)!/n! * d^k/dt^k |K + tM| at t = 0.

    With this normalisation V_k(K, M) is the classical mixed volume
    V(K[n-k], M[k]); ``coefficients`` holds the raw volume polynomial.
    """

    values: tuple
    coefficients: tuple

    @property
    def n(self):
        return len(self.values) - 1

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)


def _is_origin(M: Polytope) -> bool:
    return M.affine_dim == 0 and not any(M._ivertices[0])


@lru_cache(maxsize=512)
def mixed_volumes(K: Polytope, M: Polytope) -> MixedVolumeVector:
    """Exact V_0..V_n(K, M) from the volume polynomial |K + tM| = sum c_k t^k.

    Coefficients known in closed form are fixed first: c_0 = |K|,
    c_1 = sum h_M(a_f) over facets of K, c_k = 0 above dim M and, for
    full-dimensional M, c_n = |M| and c_(n-1) = sum h_K(a_g) over facets of M.
    The rest come from exact volumes of K + tM at t = 1, 2, ...; one extra
    value of t is always evaluated and must match the fitted polynomial.
    """
    if not K.full:
        raise ValueError("K must be full-dimensional")
    if K.dim != M.dim:
        raise ValueError("dimension mismatch")
    n = K.dim
    instance = {"K": K.key(), "M": M.key()}
    if _is_origin(M):
        c = [K.volume] + [Fraction(0)] * n
        return MixedVolumeVector(tuple(c[k] / comb(n, k) for k in range(n + 1)), tuple(c))
    known = {0: K.volume, 1: first_variation(K, M)}
    for k in range(M.affine_dim + 1, n + 1):
        known[k] = Fraction(0)
    if M.full:
        for k, value in ((n, M.volume), (n - 1, first_variation(M, K))):
            if k in known and known[k] != value:
                raise InternalInconsistency(f"volume polynomial coefficient c{k} is inconsistent", instance)
            known[k] = value
    unknown = [k for k in range(n + 1) if k not in known]
    S, pairs = minkowski_sum_with_pairs(K, M)
    ts = list(range(1, len(unknown) + 2))
    vols = [S.volume] + [sum_from_pairs(K, M, t, pairs).volume for t in ts[1:]]
    resid = [v - sum(c * t**k for k, c in known.items()) for t, v in zip(ts, vols)]
    # the check point t = 1 is left out of the solve
    c = dict(known)
    if unknown:
        rows = [[Fraction(t) ** k for k in unknown] for t in ts[1:]]
        c.update(zip(unknown, solve(rows, resid[1:])))
    predicted = sum(c[k] for k in range(n + 1))
    if predicted != vols[0]:
        raise InternalInconsistency(
            f"|K + M| = {vols[0]} but the fitted volume polynomial gives {predicted}", instance)
    coeffs = [c[k] for k in range(n + 1)]
    values = tuple(coeffs[k] / comb(n, k) for k in range(n + 1))
    return MixedVolumeVector(values, tuple(coeffs))


def mixed_volume_pair(K: Polytope, M1: Polytope, M2: Polytope) -> Fraction:
    """V(K[n-2], M1, M2) by polarization of V_2."""
    s = minkowski_sum(M1, M2)
    return (mixed_volumes(K, s)[2] - mixed_volumes(K, M1)[2] - mixed_volumes(K, M2)[2]) / 2


class LogBMGap(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    gap: Fraction
    v1: Fraction
    v2: Fraction
    weighted: Fraction


def logbm_gap(K: Polytope, M: Polytope) -> LogBMGap:
    """Both sides of n(n-1)V_2 + int h_M^2/<x,n> <= n^2 V_1^2 / |K| and their difference."""
    n = K.dim
    V = mixed_volumes(K, M)
    W = weighted_surface_quadratic(K, M)
    lhs = n * (n - 1) * V[2] + W
    rhs = n * n * V[1] ** 2 / K.volume
    return LogBMGap(lhs, rhs, rhs - lhs, V[1], V[2], W)


def holder_gap(K: Polytope, M: Polytope) -> Fraction:
    """int h_M^2/<x,n> - n V_1^2/|K|  (non-negative by Cauchy-Schwarz)."""
    n = K.dim
    V = mixed_volumes(K, M)
    return weighted_surface_quadratic(K, M) - n * V[1] ** 2 / K.volume
