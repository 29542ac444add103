"""Local rewrites of touching nodes.

* ``sandwich_normalize`` replaces every grouped 3-fold node (each string's two
  branches consecutive) by a triangle of three 2-fold nodes.
* ``reroute_at_sandwich`` moves the outer string of a sandwich node onto a new
  2-fold node next to it on the middle string.
* ``reduce_to_two_touching`` repeats that peeling move until no point lies on
  more than two strings.

All rewrites keep the arrangement crossing-free and of genus 0; this is
checked after every rewrite.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import END, Arrangement, find_crossings, natural_key
from .errors import (NotASandwichTriple, PreconditionEndAtNode,
                     PreconditionEndAtTripleNode, TransformError, UnknownNode)
from .geometry import GeometricSystem, compile_system
from .surgery import Editable


@dataclass
class TransformReport:
    op: str
    touched: list = field(default_factory=list)
    created: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)


def _arr(x) -> Arrangement:
    return compile_system(x) if isinstance(x, GeometricSystem) else x


def _validate(arr: Arrangement):
    if not arr.is_genus_zero:
        raise TransformError("rewrite broke genus 0")
    if find_crossings(arr):
        raise TransformError("rewrite introduced a crossing")


def _outer_keys(arr: Arrangement, ed: Editable, gone):
    """One dart per outer face, as ``(string, tail, direction)`` with a tail
    outside the rewritten nodes.  The rewrite only changes a small disk around
    those nodes, so the face left of such a dart keeps its identity."""
    of = arr.outer_faces
    if of is None:
        return None
    keys = []
    for fi in sorted(of.values()):
        darts = sorted((ed.dart_key(arr, d) for d in arr.faces[fi]), key=str)
        keep = [k for k in darts if k[1] not in gone]
        if not keep:
            return None
        s, tail, head = keep[0]
        e = arr._exts[s]
        keys.append((s, tail, 1 if e.index(head) > e.index(tail) else -1))
    return keys


def _finish(ed: Editable, keys) -> Arrangement:
    arr = ed.to_arrangement()
    if keys:
        wit = []
        for s, tail, sign in keys:
            e = arr._exts[s]
            head = e[e.index(tail) + sign]
            wit.append(arr.witness_for_dart(Editable.find_dart(arr, (s, tail, head))))
        arr = arr.with_outer(tuple(wit))
    _validate(arr)
    return arr


def rotation_pattern(arr: Arrangement, nid):
    """String names around ``nid`` in ccw order."""
    return [b.string for b in arr.nodes[nid]]


def _adjacent_pairs(seq):
    n = len(seq)
    return [i for i in range(n) if seq[i] == seq[(i + 1) % n]]


def pattern_kind(seq) -> str:
    """``grouped`` / ``sandwich`` / ``crossing`` for a 3-fold all-through node."""
    adj = len(_adjacent_pairs(seq))
    if adj == 3:
        return "grouped"
    if adj == 2:
        return "sandwich"
    return "crossing"


def _all_through(arr: Arrangement, nid) -> bool:
    return all(b.orient != END for b in arr.nodes[nid])


def _split_grouped(ed: Editable, x, report):
    r = ed.rot[x]
    i = _adjacent_pairs([s for s, _ in r])[0]
    r = r[i:] + r[:i]
    strings = [r[0][0], r[2][0], r[4][0]]
    pairs = {s: (r[2 * j], r[2 * j + 1]) for j, s in enumerate(strings)}
    q = {}
    for j, s in enumerate(strings):
        q[(s, strings[(j + 1) % 3])] = ed.fresh()
        ed.rot[q[(s, strings[(j + 1) % 3])]] = []
    del ed.rot[x]
    for j, s in enumerate(strings):
        nxt, prv = strings[(j + 1) % 3], strings[(j - 1) % 3]
        (_, t1), (_, t2) = pairs[s]
        near2, near1 = q[(s, nxt)], q[(prv, s)]
        # s runs t2 -> q(s, next) -> q(prev, s) -> t1
        e = ed.ext(s)
        k = e.index(x)
        w = ed.walks[s]
        i_w = w.index(x)
        w[i_w:i_w + 1] = [near2, near1] if e[k - 1] == t2 else [near1, near2]
        ed.retarget(t2, s, x, near2)
        ed.retarget(t1, s, x, near1)
        (_, n1), _ = pairs[nxt]
        ed.rot[near2] = [(nxt, q[(nxt, strings[(j + 2) % 3])]), (s, near1), (s, t2), (nxt, n1)]
    report.touched.append(x)
    report.created += sorted(q.values(), key=natural_key)


def sandwich_normalize(x):
    """Split every grouped 3-fold node into three 2-fold nodes."""
    arr = _arr(x)
    triples = [n for n in arr.nodes if arr.multiplicity(n) == 3]
    for n in triples:
        if not _all_through(arr, n):
            raise PreconditionEndAtTripleNode(n)
        if len(arr.nodes[n]) != 6 or pattern_kind(rotation_pattern(arr, n)) == "crossing":
            raise TransformError(f"node {n} is neither grouped nor sandwich")
    grouped = [n for n in triples if pattern_kind(rotation_pattern(arr, n)) == "grouped"]
    report = TransformReport("sandwich")
    if not grouped:
        report.checks = {"genus_zero": arr.is_genus_zero, "crossing_free": not find_crossings(arr)}
        return arr, report
    ed = Editable(arr)
    keys = _outer_keys(arr, ed, set(grouped))
    for n in grouped:
        _split_grouped(ed, n, report)
    out = _finish(ed, keys)
    report.checks = {"genus_zero": True, "crossing_free": True}
    return out, report


def _peel(ed: Editable, x, s0):
    """Move ``s0`` (whose branches are consecutive at ``x``) onto a new node
    on the string met right after its pair."""
    r = ed.rot[x]
    n = len(r)
    i = next(i for i in range(n) if r[i][0] == s0 and r[(i + 1) % n][0] == s0)
    r = r[i:] + r[:i]
    (_, t1), (_, t2), (s1, u1) = r[0], r[1], r[2]
    q = ed.fresh()
    ed.subdivide(s1, x, u1, q)
    w = ed.walks[s0]
    w[w.index(x)] = q
    ed.retarget(t1, s0, x, q)
    ed.retarget(t2, s0, x, q)
    ed.rot[x] = [k for k in ed.rot[x] if k[0] != s0]
    ed.rot[q] = [(s1, x), (s0, t1), (s0, t2), (s1, u1)]
    return q, s1


def reroute_at_sandwich(x, node):
    arr = _arr(x)
    if node not in arr.nodes:
        raise UnknownNode(node)
    seq = rotation_pattern(arr, node)
    if arr.multiplicity(node) != 3 or not _all_through(arr, node) or pattern_kind(seq) != "sandwich":
        raise NotASandwichTriple(node)
    outer = sorted({seq[i] for i in _adjacent_pairs(seq)})
    s0 = outer[0]
    ed = Editable(arr)
    keys = _outer_keys(arr, ed, {node})
    q, s1 = _peel(ed, node, s0)
    out = _finish(ed, keys)
    report = TransformReport("reroute", [node], [q],
                             {"moved": s0, "middle": s1, "genus_zero": True, "crossing_free": True})
    return out, report


def reduce_to_two_touching(x):
    arr = _arr(x)
    for n in arr.nodes:
        if not _all_through(arr, n):
            raise PreconditionEndAtNode(n)
    report = TransformReport("reduce2")
    if all(arr.multiplicity(n) <= 2 for n in arr.nodes):
        report.checks = {"genus_zero": arr.is_genus_zero, "crossing_free": not find_crossings(arr)}
        return arr, report
    ed = Editable(arr)
    keys = _outer_keys(arr, ed, {n for n in arr.nodes if arr.multiplicity(n) > 2})
    for n in list(arr.nodes):
        while len(ed.rot[n]) > 4:
            seq = [s for s, _ in ed.rot[n]]
            cands = sorted({seq[i] for i in _adjacent_pairs(seq)})
            if not cands:
                raise TransformError(f"node {n} has no peelable string")
            q, _ = _peel(ed, n, cands[0])
            if n not in report.touched:
                report.touched.append(n)
            report.created.append(q)
            _validate(ed.to_arrangement())
    out = _finish(ed, keys)
    report.checks = {"genus_zero": True, "crossing_free": True}
    return out, report
