from fractions import Fraction as F
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from logbm.bodies import (
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
from logbm.checkers import check_theorem_1_4
from logbm.errors import DegenerateInput, SpecError
from logbm.exact import det
from logbm.functionals import MaxForm, mixed_volumes
from logbm.polytope import convex_hull


def test_zonotope_examples():
    Z = zonotope([(1, 0), (0, 1)])
    assert Z == cube(2) and Z.volume == 4
    assert zonotope([(1, 1), (1, -1)]).volume == 8


def test_prism_example():
    base = convex_hull([(0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], require_full=False)
    assert cylinder(base, (1, 0, 0)).volume == 4


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=3, max_size=5))
def test_zonotope_volume_formula(n, raw):
    gens = [g[:n] for g in raw if any(g[:n])]
    expected = 2**n * sum(abs(det(list(sub))) for sub in itertools.combinations(gens, n))
    if expected == 0:
        return
    assert zonotope(gens).volume == expected


def test_named_bodies():
    assert box((1, 2, 3)).volume == 48
    assert square2d(3, 0, 2).affine_dim == 2
    assert segment((1, 2)).volume == 0
    assert cross_polytope(4).volume == F(16, 24)
    with pytest.raises(ValueError):
        square2d(3, 1, 1)


def test_construct_specs():
    spec = {"kind": "cylinder", "base": {"kind": "vertices", "points": [["0", "1"], ["0", "-1"]]},
            "axis": ["1", "0"]}
    assert construct(spec, require_full=True) == cube(2)
    assert construct({"kind": "box", "halfSides": ["1/2", 2]}).volume == 4
    assert construct({"kind": "minkowskiSum", "operands": [
        {"kind": "cube", "dim": 2}, {"kind": "segment", "vector": [1, 0]}]}).volume == 8
    assert construct({"kind": "linearImage", "base": {"kind": "cube", "dim": 2},
                      "matrix": [[1, 1], [0, 1]]}).volume == 4


def test_spec_errors_name_field():
    with pytest.raises(SpecError) as e:
        construct({"kind": "vertices", "points": [["1/0", "1"], ["-1", "-1"]]}, field="K")
    assert e.value.field == "K.points[0][0]"
    with pytest.raises(SpecError) as e:
        construct({"kind": "blob"})
    assert "kind" in e.value.field
    with pytest.raises(SpecError):
        construct({"kind": "vertices", "points": [[1, 1], [2, 0], [0, 0]]})  # not symmetric
    with pytest.raises(DegenerateInput):
        construct({"kind": "segment", "vector": [1, 1]}, require_full=True)


def test_to_spec_round_trip():
    P = random_symmetric_polytope(3, 6, 11, 4)
    assert construct(to_spec(P)) == P
    Q = box((F(1, 3), F(5, 2)))
    assert construct(to_spec(Q)) == Q


def test_random_determinism_and_shape():
    a = random_symmetric_polytope(2, 4, 99)
    b = random_symmetric_polytope(2, 4, 99)
    assert a.vertices == b.vertices
    for seed in range(10):
        P = random_symmetric_polytope(3, 4, seed, 3)
        assert P.full and P.symmetric
        assert all(sum(a[k] for a, _ in P.facets) == 0 for k in range(3))


def test_random_body_passes_theorem_1_4():
    K = random_symmetric_polytope(3, 20, 1, 10)
    assert check_theorem_1_4(K, MaxForm(((1, 2, 0), (0, 1, -1)))).holds


def test_cylinder_annihilates_its_axis():
    base = convex_hull([(0, 2, 1), (0, -2, -1), (0, 1, -3), (0, -1, 3)], require_full=False)
    K = cylinder(base, (2, 1, 1))
    assert mixed_volumes(K, segment((2, 1, 1)))[2] == 0
