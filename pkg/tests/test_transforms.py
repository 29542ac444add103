import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import arr_from, genus_zero_oracle
from touchstrings import (find_crossings, gen_braid, gen_random_touching, gen_string_clique,
                          gen_sun, intersection_graph, reduce_to_two_touching,
                          reroute_at_sandwich, sandwich_normalize)
from touchstrings.errors import (NotASandwichTriple, PreconditionEndAtNode,
                                 PreconditionEndAtTripleNode, UnknownNode)
from touchstrings.transforms import pattern_kind, rotation_pattern

FREE = (["v"], True, True)


def one_node(tokens):
    strings = {t.split("@")[0] for t in tokens.split()}
    return arr_from({"v": tokens}, {s: FREE for s in strings})


GROUPED = "a@0+ a@0- b@0+ b@0- c@0+ c@0-"
SANDWICH = "a@0+ a@0- b@0+ c@0+ c@0- b@0-"


def valid(arr):
    return not find_crossings(arr) and genus_zero_oracle(arr)


def mults(arr):
    return sorted(arr.multiplicity(n) for n in arr.nodes)


# -- patterns -----------------------------------------------------------------------------

def test_pattern_kinds():
    assert pattern_kind(list("aabbcc")) == "grouped"
    assert pattern_kind(list("abbcca")) == "grouped"
    assert pattern_kind(list("aabccb")) == "sandwich"
    assert pattern_kind(list("abcabc")) == "crossing"


# -- sandwich normalization -------------------------------------------------------------------

def test_grouped_node_becomes_triangle():
    arr = one_node(GROUPED)
    out, rep = sandwich_normalize(arr)
    assert mults(out) == [2, 2, 2]
    assert intersection_graph(out) == intersection_graph(arr)
    assert intersection_graph(out).is_complete()
    assert valid(out)
    assert rep.touched == ["v"] and len(rep.created) == 3


def test_sandwich_node_is_a_fixpoint():
    arr = one_node(SANDWICH)
    out, rep = sandwich_normalize(arr)
    assert out == arr and rep.created == []


def test_two_fold_only_is_identity():
    arr = gen_braid(2)
    assert sandwich_normalize(arr)[0] == arr


def test_ends_at_triple_node_rejected():
    arr = arr_from({"v": "a@0e b@0+ b@0- c@0+ c@0-"},
                   {"a": (["v"], True, False), "b": FREE, "c": FREE})
    with pytest.raises(PreconditionEndAtTripleNode):
        sandwich_normalize(arr)


@pytest.mark.parametrize("arr", [gen_braid(3), gen_sun(1)], ids=["braid3", "sun1"])
def test_normalize_keeps_graph(arr):
    try:
        out, _ = sandwich_normalize(arr)
    except PreconditionEndAtTripleNode:
        pytest.skip("strings end at triple nodes")
    assert intersection_graph(out) == intersection_graph(arr)
    assert valid(out)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10_000))
def test_normalize_properties(seed):
    arr = gen_random_touching(seed, 6, 10)
    out, _ = sandwich_normalize(arr)
    assert intersection_graph(out) == intersection_graph(arr)
    assert valid(out)
    for n in out.nodes:
        if out.multiplicity(n) == 3:
            assert pattern_kind(rotation_pattern(out, n)) == "sandwich"


# -- rerouting ----------------------------------------------------------------------------------

def test_reroute_single_sandwich():
    arr = one_node(SANDWICH)
    out, rep = reroute_at_sandwich(arr, "v")
    assert rep.checks["moved"] == "a" and rep.checks["middle"] == "b"
    q = rep.created[0]
    assert {b.string for b in out.nodes["v"]} == {"b", "c"}
    assert {b.string for b in out.nodes[q]} == {"a", "b"}
    # a and c met only at v, so their edge goes away
    assert set(intersection_graph(out).edges) == {("a", "b"), ("b", "c")}
    assert valid(out)
    # q sits right next to v on the middle string
    w = out.walks["b"].nodes
    assert abs(w.index(q) - w.index("v")) == 1


def test_reroute_errors():
    with pytest.raises(NotASandwichTriple):
        reroute_at_sandwich(gen_braid(2), gen_braid(2).node_ids()[0]
                            if hasattr(gen_braid(2), "node_ids") else next(iter(gen_braid(2).nodes)))
    with pytest.raises(NotASandwichTriple):
        reroute_at_sandwich(one_node(GROUPED), "v")
    with pytest.raises(UnknownNode):
        reroute_at_sandwich(one_node(SANDWICH), "nowhere")


def test_reroute_keeps_other_nodes():
    arr = gen_braid(3)
    out, _ = sandwich_normalize(arr)
    targets = [n for n in out.nodes if out.multiplicity(n) == 3]
    if not targets:
        pytest.skip("no sandwich node")
    x = targets[0]
    res, rep = reroute_at_sandwich(out, x)
    for n in out.nodes:
        if n != x:
            assert [(b.string, b.orient) for b in res.nodes[n]] == \
                [(b.string, b.orient) for b in out.nodes[n]] or n in res.nodes
    assert res.multiplicity(x) == 2
    assert valid(res)


# -- reduction to 2-touching ----------------------------------------------------------------------

def test_one_triple_node():
    out, rep = reduce_to_two_touching(one_node(GROUPED))
    assert mults(out) == [2, 2]
    assert valid(out)


def test_braid3_gives_six_nodes():
    out, _ = reduce_to_two_touching(gen_braid(3))
    assert mults(out) == [2] * 6
    assert valid(out)


def test_already_two_touching():
    arr = gen_braid(2)
    assert reduce_to_two_touching(arr)[0] == arr


def test_reduce_rejects_ends():
    with pytest.raises(PreconditionEndAtNode):
        reduce_to_two_touching(gen_sun(1))


def _reduce_checks(arr):
    out, _ = reduce_to_two_touching(arr)
    assert max(mults(out), default=0) <= 2
    assert len(out.nodes) == sum(arr.multiplicity(n) - 1 for n in arr.nodes)
    before, after = arr.shared_counts, out.shared_counts
    assert all(after.get(p, 0) <= c for p, c in before.items())
    assert set(after) <= set(before)
    assert valid(out)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_reduce_braids(n):
    _reduce_checks(gen_braid(n))


def test_reduce_string_clique_rejected_or_valid():
    arr = gen_string_clique(3)
    try:
        _reduce_checks(arr)
    except PreconditionEndAtNode:
        pass


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10_000))
def test_reduce_properties(seed):
    _reduce_checks(gen_random_touching(seed, 6, 10))


def test_inputs_not_mutated():
    arr = gen_braid(3)
    snap = repr(arr)
    reduce_to_two_touching(arr)
    sandwich_normalize(arr)
    assert repr(arr) == snap
