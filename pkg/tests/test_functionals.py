from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from logbm import floatgeom
from logbm.bodies import box, cross_polytope, cube, random_symmetric_polytope, segment, square2d
from logbm.errors import InternalInconsistency
from logbm.functionals import (
    MaxForm,
    SumForm,
    cauchy_projection,
    fit_polynomial,
    holder_gap,
    logbm_gap,
    mixed_volume_pair,
    mixed_volumes,
    seminorm_eval,
    surface_linear,
    surface_quadratic,
    weighted_surface_quadratic,
)
from logbm.polytope import (
    linear_image,
    minkowski_sum,
    point_body,
    projection_onto_complement,
    scale,
)

seeds = st.integers(0, 10**6)
lams = st.fractions(F(1, 4), 4, max_denominator=6)


def brute_mixed(K, M):
    """Plain Vandermonde fit of |K + tM| at t = 0..n (no known coefficients)."""
    n = K.dim
    vols = [minkowski_sum(K, scale(M, t)).volume if t else K.volume for t in range(n + 1)]
    c = fit_polynomial(list(range(n + 1)), vols)
    return tuple(c[k] / comb(n, k) for k in range(n + 1))


def test_seminorm_examples():
    e1, e2 = (1, 0), (0, 1)
    assert seminorm_eval(MaxForm((e1,)), (3, -4)) == 3
    assert seminorm_eval(SumForm(((1, e1), (1, e2))), (3, -4)) == 7
    assert seminorm_eval(MaxForm(((1, 1), (1, -1))), (2, 1)) == 3


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3),
       *[st.tuples(st.integers(-5, 5), st.integers(-5, 5))] * 2, lams)
def test_seminorm_axioms(omega, x, y, lam):
    for N in (MaxForm(tuple(omega)), SumForm(tuple((i + 1, v) for i, v in enumerate(omega)))):
        assert N(x) >= 0
        assert N(tuple(-a for a in x)) == N(x)
        assert N(tuple(lam * a for a in x)) == lam * N(x)
        assert N(tuple(a + b for a, b in zip(x, y))) <= N(x) + N(y)


def test_surface_examples():
    e1 = MaxForm(((1, 0),))
    l1 = SumForm(((1, (1, 0)), (1, (0, 1))))
    assert surface_linear(cube(2), e1) == 4
    assert surface_linear(cube(2), l1) == 8
    assert surface_linear(cube(3), SumForm(((0, (1, 0, 0)),))) == 0
    assert surface_quadratic(cube(2), e1) == 4
    assert surface_quadratic(cross_polytope(2), e1) == 4
    # four area vectors of norm 2 with support 2: 4 * 4/2
    assert surface_quadratic(cube(2), l1) == 8


def test_weighted_and_cauchy():
    K = random_symmetric_polytope(3, 5, 3)
    assert weighted_surface_quadratic(K, K) == 3 * K.volume
    assert weighted_surface_quadratic(cube(2), segment((1, 0))) == 4
    assert weighted_surface_quadratic(K, point_body(3)) == 0
    assert cauchy_projection(cube(3), (1, 0, 0)) == 4
    assert cauchy_projection(cube(2), (1, 1)) == 4
    assert cauchy_projection(cross_polytope(2), (1, 0)) == 2


def test_mixed_volume_examples():
    assert tuple(mixed_volumes(cube(2), cube(2))) == (4, 4, 4)
    assert tuple(mixed_volumes(cube(2), segment((1, 0)))) == (4, 2, 0)
    V = mixed_volumes(cube(3), square2d(3, 0, 1))
    assert 6 * V[2] == 16
    # polarization; the segment-pair value is 16/(n(n-1)) / 2 because
    # V_2 of the square counts the pair twice
    assert mixed_volume_pair(cube(3), segment((1, 0, 0)), segment((0, 1, 0))) == F(4, 3)
    assert mixed_volume_pair(cube(3), cube(3), cube(3)) == mixed_volumes(cube(3), cube(3))[2]
    assert mixed_volume_pair(cube(3), segment((1, 0, 0)), point_body(3)) == 0


def test_logbm_gap_examples():
    K = random_symmetric_polytope(3, 6, 8)
    assert logbm_gap(K, K).gap == 0
    g = logbm_gap(cube(2), segment((1, 0)))
    assert (g.lhs, g.rhs, g.gap) == (4, 4, 0)
    g = logbm_gap(cube(2), box((1, 1)))
    assert (g.lhs, g.rhs) == (16, 16)
    assert holder_gap(cube(2), cube(2)) == 0
    assert holder_gap(cube(2), segment((1, 0))) == 2
    assert holder_gap(K, scale(K, F(3, 7))) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 3), seeds, seeds)
def test_mixed_volumes_match_plain_fit(n, s1, s2):
    K = random_symmetric_polytope(n, n + 2, s1, 4)
    M = random_symmetric_polytope(n, n + 1, s2, 4)
    V = mixed_volumes(K, M)
    assert tuple(V) == brute_mixed(K, M)
    assert V[0] == K.volume and V[n] == M.volume
    assert all(v >= 0 for v in V)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3), seeds, seeds, lams)
def test_degree_homogeneity(n, s1, s2, lam):
    K = random_symmetric_polytope(n, n + 2, s1, 4)
    M = random_symmetric_polytope(n, n + 1, s2, 4)
    V = mixed_volumes(K, M)
    VK = mixed_volumes(scale(K, lam), M)
    VM = mixed_volumes(K, scale(M, lam))
    for k in range(n + 1):
        assert VK[k] == lam ** (n - k) * V[k]
        assert VM[k] == lam**k * V[k]


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), seeds, st.tuples(*[st.integers(-4, 4)] * 4))
def test_segment_annihilation(n, seed, v):
    v = v[:n]
    if not any(v):
        return
    K = random_symmetric_polytope(n, n + 2, seed, 4)
    V = mixed_volumes(K, segment(v))
    assert V[2] == 0
    # V_1 is the shadow: |K + t[-v,v]| = |K| + 2t |v| |K|v^perp|
    assert n * V[1] == 2 * cauchy_projection(K, v)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), seeds, seeds, st.integers(1, 3))
def test_invariance_under_adding_k(n, s1, s2, t):
    K = random_symmetric_polytope(n, n + 2, s1, 4)
    M = random_symmetric_polytope(n, n + 1, s2, 4)
    assert logbm_gap(K, minkowski_sum(M, scale(K, t))).gap == logbm_gap(K, M).gap


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), seeds, seeds, st.integers(-3, 3))
def test_unimodular_transport(n, s1, s2, a):
    K = random_symmetric_polytope(n, n + 2, s1, 4)
    M = random_symmetric_polytope(n, n + 1, s2, 4)
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    T[0][1] = a
    g0 = logbm_gap(K, M)
    # as bodies both move by T; the norm ||.||_M on normals moves by T^{-T}
    g1 = logbm_gap(linear_image(K, T), linear_image(M, T))
    assert (g0.lhs, g0.rhs) == (g1.lhs, g1.rhs)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.lists(st.fractions(F(1, 3), 3, max_denominator=5), min_size=8,
                                   max_size=8), st.integers(0, 3))
def test_box_oracle(n, sides, t):
    a, b = sides[:n], sides[4:4 + n]
    K, M = box(a), box(b)
    expected = 1
    for ai, bi in zip(a, b):
        expected *= 2 * ai + 2 * t * bi
    c = mixed_volumes(K, M).coefficients
    assert sum(ck * t**k for k, ck in enumerate(c)) == expected


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 4), seeds, seeds)
def test_float_agreement(n, s1, s2):
    K = random_symmetric_polytope(n, n + 2, s1, 5)
    M = random_symmetric_polytope(n, n + 1, s2, 5)
    exact = [float(v) for v in mixed_volumes(K, M)]
    approx = floatgeom.mixed_volumes(floatgeom.FloatBody(K), floatgeom.FloatBody(M))
    scale_ = max(abs(x) for x in exact)
    assert all(abs(x - y) <= 1e-7 * scale_ for x, y in zip(exact, approx))


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), seeds, seeds)
def test_monotone_and_minkowski_inequalities(n, s1, s2):
    K = random_symmetric_polytope(n, n + 2, s1, 4)
    M = random_symmetric_polytope(n, n + 1, s2, 4)
    big = minkowski_sum(M, segment((1,) + (0,) * (n - 1)))
    V, W = mixed_volumes(K, M), mixed_volumes(K, big)
    assert all(v <= w for v, w in zip(V, W))
    assert V[0] * V[2] <= V[1] ** 2
    assert K.volume ** (n - 1) * M.volume <= V[1] ** n
    assert holder_gap(K, M) >= 0


def test_cauchy_matches_projection():
    K = random_symmetric_polytope(3, 6, 4)
    v = (1, 2, 2)  # |v| = 3
    assert 3 * projection_onto_complement(K, [v]) == cauchy_projection(K, v)


def test_fit_check_catches_bad_volumes(monkeypatch):
    import logbm.functionals as fn

    real = fn.minkowski_sum_with_pairs

    def skewed(K, M):
        S, pairs = real(K, M)
        return scale(S, F(101, 100)), pairs

    monkeypatch.setattr(fn, "minkowski_sum_with_pairs", skewed)
    fn.mixed_volumes.cache_clear()
    K = random_symmetric_polytope(3, 5, 21)
    M = random_symmetric_polytope(3, 4, 22)
    with pytest.raises(InternalInconsistency):
        fn.mixed_volumes(K, M)
    fn.mixed_volumes.cache_clear()
