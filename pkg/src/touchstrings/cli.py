"""Command line front end: ``touchstrings <command> ...``.

Exit status: 0 ok, 1 malformed input, 2 validation failure, 3 a bound that
must hold was found violated.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .arrangement import find_crossings, profile
from .bounds import audit_instance, classify_system, color_bound
from .constructions import (NAMED, gen_braid, gen_named, gen_random_segments,
                            gen_string_clique, gen_sun)
from .errors import (GeometryError, Infeasible, ParseError, SemanticError,
                     ToolkitError, UnknownNode)
from .geometry import GeometricSystem, compile_system
from .graphs import (chromatic_exact, degeneracy_order, greedy_color,
                     intersection_graph, is_planar)
from .lp import lp_solve, lp_verify_claims
from .svg import render_svg
from .transforms import (reduce_to_two_touching, reroute_at_sandwich,
                         sandwich_normalize)

OK, MALFORMED, INVALID, VIOLATED = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise _Exit(MALFORMED, str(e)) from None
    try:
        return formats.parse(text)
    except (ParseError, SemanticError) as e:
        raise _Exit(MALFORMED, f"{path}:{e}") from None


def _arrangement(x):
    if isinstance(x, GeometricSystem):
        try:
            return compile_system(x)
        except GeometryError as e:
            raise _Exit(INVALID, str(e)) from None
    return x


def _load(path):
    return _arrangement(_read(path))


def cmd_validate(a, out):
    x = _read(a.file)
    arr = _arrangement(x)
    bad = find_crossings(arr)
    for s, t, nid in bad:
        out.write(f"crossing {s} {t} at {nid}\n")
    if not arr.is_genus_zero:
        out.write("genus is not 0\n")
    if bad or not arr.is_genus_zero:
        return INVALID
    out.write(f"ok strings={len(arr.walks)} nodes={len(arr.nodes)}\n")
    return OK


def cmd_analyze(a, out):
    arr = _load(a.file)
    p = profile(arr)
    cls = classify_system(arr, p)
    rows = [("strings", p.n), ("k", p.k), ("mu", p.mu), ("contact_points", p.c),
            ("free_ends", p.free_ends), ("contact_system", p.is_contact_system),
            ("one_sided", p.is_one_sided), ("genus_zero", arr.is_genus_zero),
            ("crossings", len(find_crossings(arr)))]
    rows += [(f"p{i}", v) for i, v in sorted(p.p.items())]
    rows += [(f"f{i}", v) for i, v in sorted(p.f.items())]
    rows += [("class", cls.tag)]
    if p.k >= 2:
        rows.append(("color_bound", color_bound(cls)))
    out.writelines(f"{k} {str(v).lower() if isinstance(v, bool) else v}\n" for k, v in rows)
    return OK


def cmd_graph(a, out):
    out.write(formats.export_graph(intersection_graph(_load(a.file))))
    return OK


def cmd_color(a, out):
    g = intersection_graph(_load(a.file))
    if a.exact:
        out.write(f"chromatic {chromatic_exact(g, cap=a.cap)}\n")
        return OK
    col = greedy_color(g, degeneracy_order(g).order) if g.n else None
    if col is not None:
        out.write(f"# {col.colors_used} colors\n")
        out.write(formats.export_coloring(col.assignment))
    return OK


def cmd_bounds(a, out):
    rep = audit_instance(_load(a.file))
    for e in rep.entries:
        if not e.applicable:
            out.write(f"{e.bound} n/a\n")
        else:
            out.write(f"{e.bound} {'ok' if e.holds else 'VIOLATED'} {e.lhs} vs {e.rhs}\n")
    for note in rep.annotations:
        out.write(f"# {note}\n")
    return OK if rep.ok else VIOLATED


def _fmt_vertex(x):
    return " ".join(f"{k}={formats.fmt_rational(v)}" for k, v in x.items() if v)


def cmd_lp(a, out):
    n = Fraction(a.n)
    if a.claims:
        rep = lp_verify_claims(a.variant, a.k, n)
        for r in rep.results:
            extra = f" {_fmt_vertex(r.witness)}" if r.witness else ""
            out.write(f"{r.name} {r.status}{extra}\n")
        return OK if rep.ok or all(r.status == "infeasible" for r in rep.results) else VIOLATED
    try:
        sol = lp_solve(a.variant, a.k, n)
    except Infeasible as e:
        out.write(f"infeasible: {e}\n")
        return OK
    out.write(f"optimum {formats.fmt_rational(sol.optimum)}\n")
    for x in sol.optimal_vertices:
        out.write(f"vertex {_fmt_vertex(x) or '0'}\n")
    return OK


def cmd_generate(a, out):
    fam = a.family
    if fam == "random":
        if a.seed is None:
            raise _Exit(MALFORMED, "--seed is required for the random family")
        size = a.param if a.param is not None else 20
        x = gen_random_segments(a.seed, a.count, (0, 0, size, size), a.max_k)
    elif fam in ("braid", "sun", "clique"):
        if a.param is None:
            raise _Exit(MALFORMED, f"--param is required for {fam}")
        x = {"braid": gen_braid, "sun": gen_sun, "clique": gen_string_clique}[fam](a.param)
    else:
        x = gen_named(fam, a.param)
    out.write(formats.serialize(x))
    return OK


def cmd_transform(a, out):
    x = _read(a.file)
    if a.op == "reroute":
        if a.node is None:
            raise _Exit(MALFORMED, "--node is required for reroute")
        try:
            res, rep = reroute_at_sandwich(_arrangement(x), a.node)
        except UnknownNode as e:
            raise _Exit(MALFORMED, f"unknown node {e}") from None
    else:
        fn = sandwich_normalize if a.op == "sandwich" else reduce_to_two_touching
        res, rep = fn(_arrangement(x))
    out.write(formats.serialize(res))
    print(f"{rep.op}: touched {' '.join(map(str, rep.touched)) or '-'}; "
          f"created {' '.join(map(str, rep.created)) or '-'}", file=sys.stderr)
    return OK


def cmd_render(a, out):
    svg = render_svg(_read(a.file))
    if a.output == "-":
        out.write(svg)
    else:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="touchstrings", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="input file, or - for stdin")
        p.set_defaults(fn=fn)
        return p

    with_file("validate", cmd_validate, "check for crossings and genus 0")
    with_file("analyze", cmd_analyze, "profile and class of an instance")
    with_file("graph", cmd_graph, "export the intersection graph")
    p = with_file("color", cmd_color, "color the intersection graph")
    p.add_argument("--exact", action="store_true", help="exact chromatic number")
    p.add_argument("--cap", type=int, default=24, help="largest graph for branch and bound")
    with_file("bounds", cmd_bounds, "audit edge and degree bounds")

    p = sub.add_parser("lp", help="solve a counting LP exactly")
    p.add_argument("--variant", required=True, choices=["1", "2", "3"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", default="1", help="number of strings (integer or p/q)")
    p.add_argument("--claims", action="store_true", help="check zero patterns and bound")
    p.set_defaults(fn=cmd_lp)

    p = sub.add_parser("generate", help="emit a generated instance")
    p.add_argument("--family", required=True,
                   choices=["braid", "sun", "clique", *NAMED, "random"])
    p.add_argument("--param", type=int, help="family size parameter (grid size for random)")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10, help="segments in a random instance")
    p.add_argument("--max-k", type=int, default=3)
    p.set_defaults(fn=cmd_generate)

    p = with_file("transform", cmd_transform, "rewrite touching nodes")
    p.add_argument("--op", required=True, choices=["sandwich", "reroute", "reduce2"])
    p.add_argument("--node")

    p = with_file("render", cmd_render, "draw as SVG")
    p.add_argument("-o", "--output", required=True, help="output path, or - for stdout")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except _Exit as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ParseError, SemanticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED
    except ToolkitError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
