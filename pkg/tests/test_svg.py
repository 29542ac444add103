import re
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from touchstrings import (Arrangement, GeometricSystem, SvgOptions, compile_system, gen_braid,
                          gen_named, gen_sun, parse, render_svg)

NS = "{http://www.w3.org/2000/svg}"
GOLDEN = Path(__file__).parent / "golden"


def elements(svg):
    root = ET.fromstring(svg)
    return root.findall(f"{NS}polyline"), root.findall(f"{NS}circle")


def test_fan_counts():
    lines, circles = elements(render_svg(gen_named("fig7c", 3)))
    assert len(lines) == 4 and len(circles) == 4


def test_fan_golden():
    assert render_svg(gen_named("fig7c", 3)) == (GOLDEN / "fig7c3.svg").read_text()


def test_empty_inputs_give_valid_documents():
    for x in (GeometricSystem([]), Arrangement({}, {})):
        svg = render_svg(x)
        lines, circles = elements(svg)
        assert lines == [] and circles == []


@pytest.mark.parametrize("make", [lambda: gen_named("fig7c", 4), lambda: gen_braid(3),
                                  lambda: gen_sun(1), lambda: gen_named("fig5a")],
                         ids=["fan", "braid", "sun", "fig5a"])
def test_deterministic(make):
    assert render_svg(make()) == render_svg(make())


def test_distinct_hues_and_one_polyline_per_string():
    g = gen_named("fig5b", 5)
    lines, _ = elements(render_svg(g))
    assert sorted(l.get("data-string") for l in lines) == sorted(s.name for s in g.strings)
    strokes = [l.get("stroke") for l in lines]
    assert len(set(strokes)) == len(strokes)


def test_circles_scale_with_multiplicity():
    g = gen_named("fig7c", 5)
    arr = compile_system(g)
    opts = SvgOptions(node_radius=2.0)
    _, circles = elements(render_svg(g, opts))
    radii = sorted(float(c.get("r")) for c in circles)
    want = sorted(2.0 * arr.multiplicity(n) for n in arr.nodes)
    assert radii == want


def test_six_decimals():
    svg = render_svg(gen_named("fig7c", 3))
    nums = re.findall(r"-?\d+\.\d+", svg)
    assert nums and all(len(n.split(".")[1]) == 6 for n in nums)


def test_points_stay_inside_the_canvas():
    opts = SvgOptions(width=300, height=200, margin=10)
    lines, circles = elements(render_svg(gen_sun(2), opts))
    for l in lines:
        for pair in l.get("points").split():
            x, y = map(float, pair.split(","))
            assert 0 <= x <= 300 and 0 <= y <= 200
    for c in circles:
        assert 0 <= float(c.get("cx")) <= 300 and 0 <= float(c.get("cy")) <= 200


def test_arrangement_file_renders():
    arr = parse((GOLDEN / "braid2.arr").read_text())
    lines, circles = elements(render_svg(arr))
    assert len(lines) == 2 and len(circles) == 2
