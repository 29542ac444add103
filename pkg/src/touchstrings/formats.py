"""Text formats for geometric systems, arrangements, graphs and colorings.

Both instance formats are line based, ``#`` starts a comment and blank lines
are ignored.  Serialization is canonical, so ``serialize(parse(t))`` is a
fixed point.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .arrangement import Arrangement, natural_key, parse_branch
from .errors import ArrangementError, GeometryError, ParseError, SemanticError
from .geometry import GeometricSystem, P, PolylineString, validate_string

STRINGS_HEADER = "# touchstrings strings v1"
ARR_HEADER = "# touchstrings arr v1"

_NUM = re.compile(r"^-?\d+(/\d+|\.\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")


def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _tokens(line: str):
    """Whitespace separated tokens with 1-based columns, comments stripped."""
    line = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _number(tok, lineno, col) -> Fraction:
    if not _NUM.match(tok):
        raise ParseError(lineno, col, f"expected a number, got {tok!r}")
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise ParseError(lineno, col, "zero denominator")
    return Fraction(tok)


def _name(tok, lineno, col) -> str:
    if not _NAME.match(tok) or tok == "end":
        raise ParseError(lineno, col, f"bad name {tok!r}")
    return tok


# -- strings files -----------------------------------------------------------

def parse_strings(text: str) -> GeometricSystem:
    strings = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        kw, col = toks[0]
        if kw != "string":
            raise ParseError(lineno, col, f"unknown keyword {kw!r}")
        if len(toks) < 2:
            raise ParseError(lineno, len(line) + 1, "missing string name")
        name = _name(toks[1][0], lineno, toks[1][1])
        coords = toks[2:]
        if len(coords) % 2:
            raise ParseError(lineno, coords[-1][1], "odd number of coordinates")
        if len(coords) < 4:
            raise ParseError(lineno, toks[-1][1], "a string needs at least two vertices")
        vals = [_number(t, lineno, c) for t, c in coords]
        if name in seen:
            raise SemanticError(f"duplicate string {name!r}", lineno)
        seen.add(name)
        try:
            s = PolylineString(name, tuple(P(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)))
            validate_string(s)
            strings.append(s)
        except GeometryError as e:
            raise SemanticError(str(e), lineno) from e
    return GeometricSystem(strings)


def serialize_strings(g: GeometricSystem) -> str:
    lines = [STRINGS_HEADER]
    for s in sorted(g.strings, key=lambda s: s.name):
        coords = " ".join(f"{fmt_rational(v.x)} {fmt_rational(v.y)}" for v in s.vertices)
        lines.append(f"string {s.name} {coords}")
    return "\n".join(lines) + "\n"


# -- arrangement files -------------------------------------------------------

def parse_arr(text: str) -> Arrangement:
    node_line = {}
    walks = {}
    walk_line = {}
    rots = {}
    outer = []
    positions = {}
    straight = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        kw, col = toks[0]
        args = toks[1:]
        if kw == "node":
            if len(args) != 1:
                raise ParseError(lineno, col, "node takes exactly one id")
            nid = _name(args[0][0], lineno, args[0][1])
            if nid in node_line:
                raise SemanticError(f"duplicate node {nid!r}", lineno)
            node_line[nid] = lineno
        elif kw == "walk":
            if not args:
                raise ParseError(lineno, col, "walk needs a name")
            name = _name(args[0][0], lineno, args[0][1])
            if name in walks:
                raise SemanticError(f"duplicate walk {name!r}", lineno)
            body = [t for t, _ in args[1:]]
            sf = bool(body) and body[0] == "end"
            ef = len(body) > int(sf) and body[-1] == "end"
            ids = body[int(sf):len(body) - int(ef)]
            for t, c in args[1 + int(sf):len(args) - int(ef)]:
                if t == "end":
                    raise ParseError(lineno, c, "'end' only allowed first or last")
            walks[name] = (ids, sf, ef)
            walk_line[name] = lineno
        elif kw == "rot":
            if not args:
                raise ParseError(lineno, col, "rot needs a node id")
            nid = args[0][0]
            if nid in rots:
                raise SemanticError(f"second rotation for node {nid!r}", lineno)
            brs = []
            for t, c in args[1:]:
                try:
                    brs.append(parse_branch(t))
                except ValueError:
                    raise ParseError(lineno, c, f"bad branch token {t!r}") from None
            rots[nid] = (brs, lineno)
        elif kw == "outer":
            for t, c in args:
                try:
                    parse_branch(t)
                except ValueError:
                    raise ParseError(lineno, c, f"bad branch token {t!r}") from None
                outer.append((t, lineno))
        elif kw == "pos":
            if len(args) != 3:
                raise ParseError(lineno, col, "pos takes an id and two coordinates")
            x, y = (_number(t, lineno, c) for t, c in args[1:])
            positions[args[0][0]] = (P(x, y), lineno)
        elif kw == "straight":
            straight = set(straight or ()) | {t for t, _ in args}
        else:
            raise ParseError(lineno, col, f"unknown keyword {kw!r}")
    # dangling references
    for name, (ids, _, _) in walks.items():
        for nid in ids:
            if nid not in node_line:
                raise SemanticError(f"walk {name!r} uses undeclared node {nid!r}", walk_line[name])
    for nid, (brs, lineno) in rots.items():
        if nid not in node_line:
            raise SemanticError(f"rotation for undeclared node {nid!r}", lineno)
        for b in brs:
            if b.string not in walks:
                raise SemanticError(f"branch {b.token} references unknown walk {b.string!r}", lineno)
    for nid, lineno in node_line.items():
        if nid not in rots:
            raise SemanticError(f"node {nid!r} has no rotation", lineno)
    for t, lineno in outer:
        if parse_branch(t).string not in walks:
            raise SemanticError(f"outer witness {t} references unknown walk", lineno)
    for nid, (_, lineno) in positions.items():
        if nid not in node_line:
            raise SemanticError(f"position for undeclared node {nid!r}", lineno)
    if straight is not None and straight - set(walks):
        raise SemanticError(f"straight lists unknown strings {sorted(straight - set(walks))}")
    try:
        return Arrangement({nid: brs for nid, (brs, _) in rots.items()}, walks,
                           tuple(t for t, _ in outer),
                           {nid: p for nid, (p, _) in positions.items()} or None,
                           frozenset(straight) if straight is not None else None)
    except ArrangementError as e:
        raise SemanticError(str(e)) from e


def serialize_arr(arr: Arrangement) -> str:
    lines = [ARR_HEADER]
    for nid in arr.nodes:
        lines.append(f"node {nid}")
    for name, w in arr.walks.items():
        body = (["end"] if w.start_free else []) + list(w.nodes) + (["end"] if w.end_free else [])
        lines.append(" ".join(["walk", name] + body))
    for nid, rot in arr.nodes.items():
        lines.append(" ".join(["rot", nid] + [b.token for b in rot]))
    for t in arr.outer:
        lines.append(f"outer {t}")
    if arr.positions:
        for nid in sorted(arr.positions, key=natural_key):
            p = arr.positions[nid]
            lines.append(f"pos {nid} {fmt_rational(p.x)} {fmt_rational(p.y)}")
    if arr.straight is not None:
        lines.append(" ".join(["straight"] + sorted(arr.straight)))
    return "\n".join(lines) + "\n"


# -- dispatch ----------------------------------------------------------------

def detect_kind(text: str) -> str:
    for line in text.splitlines():
        toks = _tokens(line)
        if toks:
            return "strings" if toks[0][0] == "string" else "arr"
    return "arr" if text.startswith(ARR_HEADER) else "strings"


def parse(text: str, kind: str = None):
    kind = kind or detect_kind(text)
    if kind == "strings":
        return parse_strings(text)
    if kind == "arr":
        return parse_arr(text)
    raise ValueError(f"unknown kind {kind!r}")


def serialize(x) -> str:
    if isinstance(x, GeometricSystem):
        return serialize_strings(x)
    if isinstance(x, Arrangement):
        return serialize_arr(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


# -- graph and coloring exports ----------------------------------------------

def export_graph(g) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges, key=lambda e: (natural_key(e[0]), natural_key(e[1])))]
    return "\n".join(lines) + "\n"


def export_coloring(assignment: dict) -> str:
    return "".join(f"c {v} {assignment[v]}\n" for v in sorted(assignment, key=natural_key))
