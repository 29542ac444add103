"""SVG drawings of string systems.

Geometric input is drawn as is.  A purely combinatorial arrangement gets a
spring layout of its node/free-end graph, which is only meant for looking at.
"""
from __future__ import annotations

import colorsys
from dataclasses import dataclass
from xml.sax.saxutils import escape

import networkx as nx

from .arrangement import Arrangement
from .errors import ToolkitError
from .geometry import GeometricSystem, compile_system


@dataclass(frozen=True)
class SvgOptions:
    width: int = 480
    height: int = 480
    margin: int = 24
    stroke: float = 2.0
    node_radius: float = 2.5
    seed: int = 0


def _hue(i, n) -> str:
    r, g, b = colorsys.hls_to_rgb(i / max(n, 1), 0.42, 0.75)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def _layout(arr: Arrangement, seed: int):
    g = nx.Graph()
    for s, e in arr._exts.items():
        g.add_nodes_from(e)
        g.add_edges_from(zip(e, e[1:]))
    order = sorted(g.nodes, key=str)
    h = nx.Graph()
    h.add_nodes_from(order)
    h.add_edges_from(sorted((tuple(sorted(e, key=str)) for e in g.edges), key=str))
    pos = nx.spring_layout(h, seed=seed) if len(h) else {}
    return {v: (float(x), float(y)) for v, (x, y) in pos.items()}


def _scene(x, opts: SvgOptions):
    """Polylines per string and (point, multiplicity) per node, in float coordinates."""
    if isinstance(x, GeometricSystem):
        lines = {s.name: [(float(p.x), float(p.y)) for p in s.vertices] for s in x.strings}
        try:
            arr = compile_system(x)
            nodes = [((float(p.x), float(p.y)), arr.multiplicity(n)) for n, p in arr.positions.items()]
        except ToolkitError:
            nodes = []
        return lines, nodes
    if x.positions is not None and all(n in x.positions for n in x.nodes) and not any(
            w.start_free or w.end_free for w in x.walks.values()):
        pos = {n: (float(p.x), float(p.y)) for n, p in x.positions.items()}
    else:
        pos = _layout(x, opts.seed)
    lines = {s: [pos[v] for v in e] for s, e in x._exts.items()}
    nodes = [(pos[n], x.multiplicity(n)) for n in x.nodes]
    return lines, nodes


def render_svg(x, options: SvgOptions | None = None) -> str:
    opts = options or SvgOptions()
    lines, nodes = _scene(x, opts)
    pts = [p for pl in lines.values() for p in pl] + [p for p, _ in nodes]
    w, h, m = opts.width, opts.height, opts.margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    if pts:
        x0 = min(p[0] for p in pts)
        x1 = max(p[0] for p in pts)
        y0 = min(p[1] for p in pts)
        y1 = max(p[1] for p in pts)
        span = max(x1 - x0, y1 - y0) or 1.0
        scale = min(w, h) - 2 * m

        def tx(p):
            # y grows upward in the input
            return (m + (p[0] - x0) / span * scale, h - m - (p[1] - y0) / span * scale)
        names = sorted(lines)
        for i, name in enumerate(names):
            coords = " ".join(f"{a:.6f},{b:.6f}" for a, b in map(tx, lines[name]))
            out.append(f'<polyline data-string="{escape(name)}" points="{coords}" fill="none" '
                       f'stroke="{_hue(i, len(names))}" stroke-width="{opts.stroke:.6f}"/>')
        for p, mult in sorted(nodes):
            a, b = tx(p)
            out.append(f'<circle cx="{a:.6f}" cy="{b:.6f}" r="{opts.node_radius * mult:.6f}" '
                       f'fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
