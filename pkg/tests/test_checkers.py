from fractions import Fraction as F
import json

import pytest
from hypothesis import given, settings, strategies as st

import logbm.checkers as ck
from logbm.bodies import box, cross_polytope, cube, cylinder, random_symmetric_polytope, segment, zonotope
from logbm.errors import InternalInconsistency
from logbm.exact import RadicalScalar
from logbm.functionals import MaxForm, SumForm, logbm_gap
from logbm.polytope import convex_hull, linear_image, minkowski_sum, point_body, scale

c2, c3, b2, b3 = cube(2), cube(3), cross_polytope(2), cross_polytope(3)
E1 = MaxForm(((1, 0),))
MODES = ("exact", "float")


def sides(r):
    if r.mode == "float":
        return pytest.approx((float(r.lhs), float(r.rhs)), rel=1e-9)
    return r.lhs, r.rhs


@pytest.mark.parametrize("mode", MODES)
def test_theorem_1_4(mode):
    r = ck.check_theorem_1_4(c2, E1, mode)
    assert r.holds and r.equality and r.details["cylinderAxis"] == (1, 0)
    assert sides(r) == (4, 4)
    r = ck.check_theorem_1_4(b2, E1, mode)
    assert sides(r) == (4, 8) and not r.equality
    r = ck.check_theorem_1_4(c2, MaxForm(((1, 0), (0, 1))), mode)
    assert r.holds and not r.equality


@pytest.mark.parametrize("mode", MODES)
def test_theorem_1_7(mode):
    r = ck.check_theorem_1_7(b2, (1, 1), mode)
    assert sides(r) == (8, 8) and r.equality and r.details["cylinderAxis"] == (1, 1)
    assert ck.check_theorem_1_7(c3, (1, 0, 0), mode).equality
    r = ck.check_theorem_1_7(b3, (1, 0, 0), mode)
    assert r.holds and not r.equality


def test_logbm_conjecture_examples():
    assert ck.check_logbm_conjecture(c3, c3).equality
    r = ck.check_logbm_conjecture(c3, zonotope([(1, 0, 0), (0, 1, 0)]))
    assert sides(r) == (32, 32)
    r = ck.check_logbm_conjecture(b3, c3)
    assert sides(r) == (84, 108) and r.kind == ck.PROBE and not r.counterexample_candidate


def test_invariance_examples():
    g = logbm_gap(c2, minkowski_sum(segment((1, 0)), c2))
    assert (g.lhs, g.rhs, g.v1, g.v2, g.weighted) == (36, 36, 6, 8, 20)
    assert ck.check_invariance(c2, segment((1, 0)), (1,)).equality
    assert ck.check_invariance(c2, segment((1, 0)), (0,)).equality
    assert ck.check_invariance(b2, c2, (2,)).equality


@pytest.mark.parametrize("mode", MODES)
def test_lemma_3_1(mode):
    r = ck.check_lemma_3_1(c2, (1, 0), mode)
    assert r.equality and float(r.lhs) == pytest.approx(1)
    r = ck.check_lemma_3_1(b2, (1, 0), mode)
    assert (float(r.lhs), float(r.rhs)) == pytest.approx((1, 2)) and not r.equality
    r = ck.check_lemma_3_1(c2, (1, 1), mode)
    assert r.holds and not r.equality
    if mode == "exact":
        assert sides(r) == (RadicalScalar(F(1, 2), 2), RadicalScalar(1, 2))


@pytest.mark.parametrize("mode", MODES)
def test_corollary_3_3(mode):
    assert ck.check_corollary_3_3(c2, (1, 0), (1, 0), mode).equality
    r = ck.check_corollary_3_3(c2, (1, 0), (0, 1), mode)
    assert (float(r.lhs), float(r.rhs)) == pytest.approx((0, 1))
    r = ck.check_corollary_3_3(b2, (1, 1), (1, 0), mode)
    assert (float(r.lhs), float(r.rhs)) == pytest.approx((1, 2)) and not r.equality


def test_cauchy_and_holder():
    r = ck.check_cauchy(random_symmetric_polytope(3, 6, 2), (1, 2, 2))
    assert r.equality
    r = ck.check_holder(c2, segment((1, 0)))
    assert r.holds and abs(r.lhs - r.rhs) == 2


def test_theorem_1_5_and_corollary_1_6():
    r = ck.check_theorem_1_5(c2, SumForm(((0, (1, 0)),)))
    assert r.holds and r.lhs == 0 and r.rhs == 0
    r = ck.check_corollary_1_6(c3, c3)
    assert r.details["factor"] == F(5, 3) and sides(r) == (72, 120)
    r = ck.check_corollary_1_6(c2, segment((1, 0)))
    assert sides(r) == (4, 6)
    assert ck.check_corollary_1_6(b3, c3).holds


def test_prop_6_1():
    r = ck.check_prop_6_1(c3, 0, 1)
    assert sides(r) == (32, 32) and r.details["airplane"]["lhs"] == 16
    r = ck.check_prop_6_1(b3, 0, 1)
    a = r.details["airplane"]
    assert a["lhs"] == a["rhs"] and r.holds
    base = convex_hull([(2, 1, 0), (-2, -1, 0), (1, -3, 0), (-1, 3, 0)], require_full=False)
    K = cylinder(base, (0, 0, 1))
    a = ck.check_prop_6_1(K, 0, 1).details["airplane"]
    # projection onto e3 direction: the segment [-1, 1]
    assert a["lhs"] == a["rhs"] == 8 * 2


def test_prop_6_2_pair():
    r = ck.check_prop_6_2_pair(c3, (1, 0, 0), (0, 1, 0))
    assert sides(r) == (8, 8) and r.holds
    assert r.details["literalConstants"]["holds"] is False
    with pytest.raises(ValueError):
        ck.check_prop_6_2_pair(c3, (1, 0, 0), (2, 0, 0))


def test_zonotope_decomposition():
    r = ck.check_zonotope_decomposition(c3, [(1, 0, 0), (0, 1, 0)])
    assert sides(r) == (16, 16)
    assert sides(ck.check_zonotope_decomposition(c3, [(1, 0, 0)])) == (0, 0)
    assert ck.check_zonotope_decomposition(b3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).equality


def test_est_chain():
    r = ck.check_prop_1_6_chain(c2, c2)
    assert r.equality and r.details["lambda"] == 1
    assert ck.check_prop_1_6_chain(c2, b2).details["lambda"] == 1
    assert ck.check_prop_1_6_chain(b2, c2).details["lambda"] == F(1, 2)


def test_demo():
    r = ck.demo_false_inequality(3)
    assert sides(r) == (2, F(3, 2)) and not r.holds and r.kind == ck.DEMO
    assert sides(ck.demo_false_inequality(4)) == (2, 1)
    r = ck.demo_false_inequality(2)
    assert r.holds and r.equality
    with pytest.raises(ValueError):
        ck.demo_false_inequality(1)


def test_cube_remark():
    r = ck.check_cube_remark(box((1, 1)))
    assert sides(r) == (16, 16)
    assert r.details["rem3"]["lhs"] == 8
    r = ck.check_cube_remark(box((1, F(1, 2), 3)))
    assert r.details["rem1SidesMatch"] and r.details["rem3"]["lhs"] == r.details["rem3"]["rhs"]


def test_zero_m_gives_equalities():
    z = point_body(3)
    for fn in (ck.check_logbm_conjecture, ck.check_minkowski_second, ck.check_holder):
        r = fn(c3, z)
        assert r.holds


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**5), st.fractions(F(1, 3), 3, max_denominator=5), st.integers(-2, 2))
def test_margin_invariant_under_scaling_and_transport(seed, lam, a):
    K = random_symmetric_polytope(3, 5, seed, 4)
    M = random_symmetric_polytope(3, 4, seed + 1, 4)
    T = [[1, a, 0], [0, 1, 0], [0, 0, 1]]
    base = ck.check_logbm_conjecture(K, M).relative_margin
    assert ck.check_logbm_conjecture(scale(K, lam), scale(M, lam)).relative_margin == base
    assert ck.check_logbm_conjecture(linear_image(K, T), linear_image(M, T)).relative_margin == base
    b = ck.check_minkowski_second(K, M).relative_margin
    assert ck.check_minkowski_second(scale(K, lam), M).relative_margin == b


def test_inconsistency_raised_when_proved_bound_breaks(monkeypatch):
    real = ck.ExactEngine.mixed

    def broken(self, K, M):
        V = real(self, K, M)
        return tuple(V[:2]) + (V[2] * 10,) + tuple(V[3:])

    monkeypatch.setattr(ck.ExactEngine, "mixed", broken)
    with pytest.raises(InternalInconsistency) as e:
        ck.check_minkowski_second(random_symmetric_polytope(3, 5, 1), random_symmetric_polytope(3, 4, 2))
    assert "K" in e.value.instance


def test_report_serialization():
    r = ck.check_lemma_3_1(c2, (1, 1))
    d = r.to_dict()
    json.dumps(d)
    assert d["checkName"] == "lemma_3_1" and d["lhs"] == "1/2*sqrt(2)"
    assert set(d) == {"checkName", "kind", "mode", "lhs", "rhs", "holds", "equality",
                      "relativeMargin", "tolerance", "counterexampleCandidate", "details"}
    f = ck.check_lemma_3_1(c2, (1, 1), "float").to_dict()
    assert f["mode"] == "float" and f["tolerance"] is not None


def test_float_tolerance_semantics():
    t = ck.Tolerances(identity=1e-9, inequality=1e-7)
    eng = ck.engine("float", t)
    assert eng.decide(1.0 + 5e-8, 1.0)[0]
    assert not eng.decide(1.0 + 1e-6, 1.0)[0]
    assert eng.decide(1.0, 1.0 + 5e-10, identity=True)[1]
    assert ck.as_tolerances(1e-5) == ck.Tolerances(1e-5, 1e-5)
