from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pairs_touching_geometrically, segs
from touchstrings import P, PolylineString, compile_system, extend_to_contact, seg_intersect
from touchstrings.arrangement import classify_node, find_crossings
from touchstrings.errors import (DegenerateEdge, NoHit, NotAFreeEnd, OverlapDetected,
                                 SelfIntersecting)
from touchstrings.geometry import angle_cmp, orient, validate_string


# -- seg_intersect --------------------------------------------------------------

def test_crossing_diagonals_meet_in_the_middle():
    r = seg_intersect((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0)))
    assert r.kind == "point" and r.point == P(1, 1)
    assert (r.locus_a, r.locus_b) == ("interior", "interior")


def test_shared_endpoint():
    r = seg_intersect((P(0, 0), P(1, 0)), (P(1, 0), P(2, 1)))
    assert r.point == P(1, 0)
    assert (r.locus_a, r.locus_b) == ("endpoint", "endpoint")


def test_collinear_with_common_span_is_overlap():
    assert seg_intersect((P(0, 0), P(2, 0)), (P(1, 0), P(3, 0))).kind == "overlap"


def test_collinear_touching_at_one_point():
    r = seg_intersect((P(0, 0), P(1, 0)), (P(1, 0), P(3, 0)))
    assert r.kind == "point" and r.point == P(1, 0)


def test_disjoint_and_parallel():
    assert seg_intersect((P(0, 0), P(1, 0)), (P(0, 1), P(1, 1))).kind == "empty"
    assert seg_intersect((P(0, 0), P(1, 0)), (P(2, 0), P(3, 0))).kind == "empty"


def test_rational_point_is_exact():
    r = seg_intersect((P(0, 0), P(3, 1)), (P(0, 1), P(1, 0)))
    assert r.point == P(Fraction(3, 4), Fraction(1, 4))


coord = st.integers(-6, 6)
point = st.tuples(coord, coord)
segment = st.tuples(point, point).filter(lambda s: s[0] != s[1])


def _float_oracle(a, b):
    """Parametric solve in floats; only used where the answer is robust."""
    (x1, y1), (x2, y2) = a
    (x3, y3), (x4, y4) = b
    den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if den == 0:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den
    u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den
    return t, u


@settings(max_examples=300, deadline=None)
@given(segment, segment)
def test_symmetry_swaps_loci_only(a, b):
    A = (P(*a[0]), P(*a[1]))
    B = (P(*b[0]), P(*b[1]))
    r, s = seg_intersect(A, B), seg_intersect(B, A)
    assert r.kind == s.kind and r.point == s.point
    assert (r.locus_a, r.locus_b) == (s.locus_b, s.locus_a)


@settings(max_examples=300, deadline=None)
@given(segment, segment)
def test_agrees_with_float_parametric_solve_when_not_parallel(a, b):
    sol = _float_oracle(a, b)
    if sol is None:
        return
    t, u = sol
    eps = 1e-9
    r = seg_intersect((P(*a[0]), P(*a[1])), (P(*b[0]), P(*b[1])))
    if eps < t < 1 - eps and eps < u < 1 - eps:
        assert r.kind == "point"
        assert abs(float(r.point.x) - (a[0][0] + t * (a[1][0] - a[0][0]))) < 1e-6
    elif t < -eps or t > 1 + eps or u < -eps or u > 1 + eps:
        assert r.kind == "empty"


def test_orientation_and_angle_order():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 0), P(2, 0)) == 0
    # ccw from +x: (1,0) < (0,1) < (-1,0) < (0,-1)
    dirs = [P(1, 0), P(0, 1), P(-1, 0), P(0, -1)]
    for i in range(3):
        assert angle_cmp(dirs[i], dirs[i + 1]) < 0


# -- validate_string -----------------------------------------------------------

def test_simple_polyline_is_valid():
    assert validate_string(PolylineString("s", ((0, 0), (2, 0), (2, 2))))


def test_self_intersection_detected():
    with pytest.raises(SelfIntersecting):
        validate_string(PolylineString("s", ((0, 0), (2, 0), (2, 2), (1, -1))))


def test_repeated_vertex_is_degenerate_edge_zero():
    with pytest.raises(DegenerateEdge) as e:
        validate_string(PolylineString("s", ((0, 0), (0, 0), (1, 1))))
    assert e.value.index == 0


def test_backtracking_polyline_is_not_simple():
    with pytest.raises(SelfIntersecting):
        validate_string(PolylineString("s", ((0, 0), (2, 0), (1, 0))))


# -- compile_system --------------------------------------------------------------

def test_two_segments_sharing_one_point():
    arr = compile_system(segs(("a", (0, 0), (1, 0)), ("b", (1, 0), (2, 1))))
    assert list(arr.nodes) == ["n0"]
    assert arr.multiplicity("n0") == 2


def test_three_ends_at_origin_form_a_peak():
    arr = compile_system(segs(("a", (0, 0), (1, 0)), ("b", (0, 0), (0, 1)), ("c", (0, 0), (-1, -1))))
    c = classify_node(arr, "n0")
    assert c.kind == "peak" and c.multiplicity == 3
    assert all(b.orient == "e" for b in arr.nodes["n0"])


def test_proper_crossing_compiles_and_is_reported():
    arr = compile_system(segs(("a", (0, 0), (2, 2)), ("b", (0, 2), (2, 0))))
    assert find_crossings(arr) == [("a", "b", "n0")]


def test_rotation_is_exact_ccw_order():
    # a runs left to right, b ends on it from above, c from below
    arr = compile_system(segs(("a", (0, 0), (2, 0)), ("b", (1, 0), (1, 1)), ("c", (1, 0), (1, -1))))
    assert [b.token for b in arr.nodes["n0"]] == ["a@0+", "b@0e", "a@0-", "c@0e"]


def test_overlap_rejected():
    with pytest.raises(OverlapDetected):
        compile_system(segs(("a", (0, 0), (2, 0)), ("b", (1, 0), (3, 0))))


def test_nodes_numbered_by_coordinates_and_walks_in_parameter_order():
    g = segs(("t", (0, 1), (4, 1)), ("x", (3, 0), (3, 1)), ("y", (1, 0), (1, 1)))
    arr = compile_system(g)
    assert arr.positions == {"n0": P(1, 1), "n1": P(3, 1)}
    assert arr.walks["t"].nodes == ("n0", "n1")
    assert arr.walks["x"].nodes == ("n1",) and not arr.walks["x"].end_free


def test_compile_is_deterministic_under_input_order():
    a = segs(("a", (0, 0), (2, 0)), ("b", (1, 0), (1, 2)), ("c", (0, 2), (2, 2)))
    b = segs(("c", (0, 2), (2, 2)), ("a", (0, 0), (2, 0)), ("b", (1, 0), (1, 2)))
    assert compile_system(a) == compile_system(b)


def test_every_node_lies_on_its_strings():
    from touchstrings.constructions import gen_random_segments
    from touchstrings.geometry import point_param
    for seed in range(1, 15):
        g = gen_random_segments(seed, 8)
        arr = compile_system(g)
        for nid, rot in arr.nodes.items():
            for b in rot:
                point_param(g[b.string], arr.positions[nid])  # raises if off the string


def test_graph_edges_match_exhaustive_pair_tests():
    from touchstrings.constructions import gen_random_segments
    from touchstrings import intersection_graph
    for seed in range(1, 15):
        g = gen_random_segments(seed, 8)
        assert set(intersection_graph(compile_system(g)).edges) == pairs_touching_geometrically(g)


# -- extend_to_contact ------------------------------------------------------------

def test_extend_hits_obstacle():
    g = segs(("s", (0, 0), (1, 0)), ("o", (2, -1), (2, 1)))
    h = extend_to_contact(g, "s", "end")
    assert h["s"].vertices == (P(0, 0), P(2, 0))
    arr = compile_system(h)
    assert [arr.multiplicity(n) for n in arr.nodes] == [2]


def test_extend_without_obstacle():
    with pytest.raises(NoHit):
        extend_to_contact(segs(("s", (0, 0), (1, 0)), ("o", (0, 1), (1, 1))), "s", "end")


def test_extend_onto_existing_node_raises_multiplicity():
    g = segs(("s", (0, 0), (1, 0)), ("a", (3, -1), (3, 1)), ("b", (3, 0), (5, 0)))
    assert compile_system(g).multiplicity("n0") == 2
    arr = compile_system(extend_to_contact(g, "s", "end"))
    assert [arr.multiplicity(n) for n in arr.nodes] == [3]


def test_extend_requires_free_end():
    g = segs(("s", (0, 0), (2, 0)), ("o", (2, -1), (2, 1)))
    with pytest.raises(NotAFreeEnd):
        extend_to_contact(g, "s", "end")


def test_extend_keeps_existing_points():
    from touchstrings.constructions import gen_random_segments
    for seed in range(1, 10):
        g = gen_random_segments(seed, 6, max_k=3)
        before = set(compile_system(g).positions.values())
        for s in g.names:
            for which in ("start", "end"):
                try:
                    h = extend_to_contact(g, s, which)
                except (NoHit, NotAFreeEnd):
                    continue
                try:
                    after = set(compile_system(h).positions.values())
                except OverlapDetected:
                    continue
                assert before <= after
                assert len(after - before) <= 1
