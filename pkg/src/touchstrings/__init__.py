"""Exact tools for families of non-crossing strings that touch at most k at a time."""
from .arrangement import (Arrangement, Branch, check_relations, classify_node,
                          contact_plane_graph, find_crossings, profile)
from .bounds import (SystemClass, audit_instance, classify_system, color_bound,
                     e_enclosure)
from .constructions import (gen_braid, gen_named, gen_random_segments,
                            gen_random_touching, gen_string_clique, gen_sun,
                            prune_free_ends, realize_touching)
from .errors import ToolkitError
from .formats import (export_coloring, export_graph, parse, serialize)
from .geometry import (GeometricSystem, P, Point, PolylineString, compile_system,
                       extend_to_contact, seg_intersect)
from .graphs import (SimpleGraph, chromatic_exact, degeneracy_order, greedy_color,
                     intersection_graph, is_planar, string_multigraph)
from .lp import LPInstance, lp_solve, lp_verify_claims
from .svg import SvgOptions, render_svg
from .transforms import (reduce_to_two_touching, reroute_at_sandwich,
                         sandwich_normalize)

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "Branch", "GeometricSystem", "LPInstance", "P", "Point",
    "PolylineString", "SimpleGraph", "SvgOptions", "SystemClass", "ToolkitError",
    "audit_instance", "check_relations", "chromatic_exact", "classify_node",
    "classify_system", "color_bound", "compile_system", "contact_plane_graph",
    "degeneracy_order", "e_enclosure", "export_coloring", "export_graph",
    "extend_to_contact", "find_crossings", "gen_braid", "gen_named",
    "gen_random_segments", "gen_random_touching", "gen_string_clique", "gen_sun",
    "greedy_color", "intersection_graph", "is_planar", "lp_solve",
    "lp_verify_claims", "parse", "profile", "prune_free_ends", "realize_touching",
    "reduce_to_two_touching", "render_svg", "reroute_at_sandwich",
    "sandwich_normalize", "seg_intersect", "serialize", "string_multigraph",
]
