from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchstrings import (Arrangement, GeometricSystem, P, PolylineString, compile_system,
                          export_coloring, export_graph, gen_braid, greedy_color,
                          degeneracy_order, intersection_graph, parse, serialize)
from touchstrings.errors import ParseError, SemanticError
from touchstrings.formats import ARR_HEADER, STRINGS_HEADER, fmt_rational

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_FILES = sorted(p for p in GOLDEN.iterdir() if p.suffix in (".arr", ".strings"))

BRAID2 = """\
# touchstrings arr v1
node c1
node c2
walk s1 end c1 c2 end
walk s2 end c1 c2 end
rot c1 s1@0+ s2@0+ s2@0- s1@0-
rot c2 s1@1+ s2@1+ s2@1- s1@1-
outer s1@0-
"""


# -- strings files ------------------------------------------------------------------

def test_single_string():
    g = parse("string a 0 0 2/1 3/2", "strings")
    (s,) = g.strings
    assert s.name == "a"
    assert [(v.x, v.y) for v in s.vertices] == [(0, 0), (2, Fraction(3, 2))]


def test_comments_blank_lines_and_decimals():
    g = parse("# hi\n\nstring a 0 0 1 1  # tail\nstring b 0.5 0 1 -1\n")
    assert [s.name for s in g.strings] == ["a", "b"]
    assert g.strings[1].vertices[0].x == Fraction(1, 2)


def test_empty_system_is_header_only():
    assert serialize(GeometricSystem([])) == STRINGS_HEADER + "\n"
    assert serialize(Arrangement({}, {})) == ARR_HEADER + "\n"


def test_rationals_print_without_unit_denominator():
    assert fmt_rational(Fraction(4, 2)) == "2"
    assert fmt_rational(Fraction(-3, 6)) == "-1/2"


@pytest.mark.parametrize("text,line,col", [
    ("string a 0 0 x 1", 1, 14),
    ("string a 0 0 1", 1, 14),
    ("string a 0 0", 1, 12),
    ("\n  strung a 0 0 1 1", 2, 3),
    ("string 9a 0 0 1 1", 1, 8),
    ("string a 0 0 1/0 1", 1, 14),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse(text, "strings")
    assert (ei.value.line, ei.value.col) == (line, col)


def test_semantic_errors_in_strings():
    with pytest.raises(SemanticError) as ei:
        parse("string a 0 0 1 1\nstring a 0 0 2 2", "strings")
    assert ei.value.line == 2
    with pytest.raises(SemanticError):
        parse("string a 0 0 0 0", "strings")


coord = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def systems(draw):
    n = draw(st.integers(0, 6))
    out = []
    for i in range(n):
        a = (draw(coord), draw(coord))
        b = draw(st.tuples(coord, coord).filter(lambda t: t != a))
        out.append(PolylineString(f"s{i}", (P(*a), P(*b))))
    return GeometricSystem(out)


@settings(max_examples=100, deadline=None)
@given(systems())
def test_strings_round_trip(g):
    text = serialize(g)
    back = parse(text)
    assert sorted((s.name, s.vertices) for s in back.strings) == \
        sorted((s.name, s.vertices) for s in g.strings)
    assert serialize(back) == text


# -- arrangement files -------------------------------------------------------------

def test_braid2_golden_text():
    assert serialize(gen_braid(2)) == BRAID2
    assert (GOLDEN / "braid2.arr").read_text() == BRAID2


def test_braid2_parses_back():
    assert parse(BRAID2) == gen_braid(2)


def test_unknown_walk_in_rotation():
    bad = BRAID2.replace("rot c1 s1@0+", "rot c1 q@0+")
    with pytest.raises(SemanticError) as ei:
        parse(bad, "arr")
    assert ei.value.line == 6


@pytest.mark.parametrize("patch,cls", [
    (("walk s2 end c1 c2 end", "walk s2 end c1 c9 end"), SemanticError),
    (("node c2\n", ""), SemanticError),
    (("rot c2 s1@1+", "rot c2 s1@1*"), ParseError),
    (("node c1", "node c1 c3"), ParseError),
    (("outer s1@0-", "outer zz@0-"), SemanticError),
    (("walk s1 end c1", "walk s1 c1 end c1"), ParseError),
    (("node c1", "vertex c1"), ParseError),
])
def test_malformed_arrangements(patch, cls):
    with pytest.raises(cls):
        parse(BRAID2.replace(*patch), "arr")


def test_unparseable_input_never_escapes_as_other_errors():
    junk = ["walk", "rot", "node", "string", "string a", "rot c1 @", "pos c1 1",
            "end", "straight x", "\x00", "string a 1 2 3 4 5"]
    for t in junk:
        with pytest.raises((ParseError, SemanticError)):
            parse(t)


# -- golden corpus -----------------------------------------------------------------

@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.name)
def test_golden_files_are_fixed_points(path):
    text = path.read_text()
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.name)
def test_golden_parse_is_stable(path):
    x = parse(path.read_text())
    assert parse(serialize(x)) == x


# -- graph and coloring exports ------------------------------------------------------

def test_graph_export():
    g = intersection_graph(compile_system(parse((GOLDEN / "fig7c3.strings").read_text())))
    lines = export_graph(g).splitlines()
    assert lines[0] == "p edge 4 6"
    assert len(lines) == 7
    edges = {tuple(l.split()[1:]) for l in lines[1:]}
    assert edges == {tuple(e) for e in g.edges}


def test_coloring_export():
    g = intersection_graph(gen_braid(3))
    col = greedy_color(g, degeneracy_order(g).order)
    lines = export_coloring(col.assignment).splitlines()
    assert len(lines) == 3
    got = {l.split()[1]: int(l.split()[2]) for l in lines}
    assert got == col.assignment
