"""Exact rational geometry for polygonal strings.

Every coordinate is a :class:`fractions.Fraction`; no predicate ever rounds.
Floating point is only used when rendering.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import (DegenerateEdge, InvalidString, NoHit, NotAFreeEnd,
                     OverlapDetected, SelfIntersecting)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def scale(self, f) -> "Point":
        return Point(self.x * f, self.y * f)


def P(x, y) -> Point:
    """Build a point from anything :class:`Fraction` accepts."""
    return Point(Fraction(x), Fraction(y))


def cross(a: Point, b: Point) -> Fraction:
    return a.x * b.y - a.y * b.x


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c (1 counterclockwise, -1 clockwise, 0 collinear)."""
    v = cross(b - a, c - a)
    return (v > 0) - (v < 0)


def _half(v: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1


def angle_cmp(a: Point, b: Point) -> int:
    """Compare the polar angles of two nonzero vectors, measured ccw from +x."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def same_direction(a: Point, b: Point) -> bool:
    return cross(a, b) == 0 and (a.x * b.x + a.y * b.y) > 0


def ccw_strictly_between(start: Point, probe: Point, stop: Point) -> bool:
    """True when ``probe`` lies strictly inside the ccw sweep from ``start`` to ``stop``.

    When ``start`` and ``stop`` point the same way the sweep is the full turn.
    """
    if same_direction(probe, start) or same_direction(probe, stop):
        return False
    a = angle_cmp(start, probe)
    b = angle_cmp(start, stop)
    c = angle_cmp(probe, stop)
    if same_direction(start, stop):
        return True
    if b < 0:  # stop is after start without wrapping
        return a < 0 and c < 0
    # sweep wraps past angle zero
    return a < 0 or c < 0


class Intersection(NamedTuple):
    """Result of :func:`seg_intersect`.

    ``kind`` is ``"empty"``, ``"point"`` or ``"overlap"``; the locus fields say
    whether the point is an endpoint or an interior point of each segment.
    """
    kind: str
    point: Optional[Point] = None
    locus_a: Optional[str] = None
    locus_b: Optional[str] = None


EMPTY = Intersection("empty")


def _locus(p: Point, seg) -> str:
    return "endpoint" if p == seg[0] or p == seg[1] else "interior"


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (orient(a, b, p) == 0
            and min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def seg_intersect(a, b) -> Intersection:
    p1, p2 = a
    q1, q2 = b
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: work along the dominant axis
        key = (lambda p: (p.x, p.y)) if p1.x != p2.x else (lambda p: (p.y, p.x))
        lo_a, hi_a = sorted((p1, p2), key=key)
        lo_b, hi_b = sorted((q1, q2), key=key)
        lo = max(lo_a, lo_b, key=key)
        hi = min(hi_a, hi_b, key=key)
        if key(lo) > key(hi):
            return EMPTY
        if lo == hi:
            return Intersection("point", lo, _locus(lo, a), _locus(lo, b))
        return Intersection("overlap")
    if d1 * d2 > 0 or d3 * d4 > 0:
        return EMPTY
    # proper or touching intersection at a single point
    r = p2 - p1
    s = q2 - q1
    t = cross(q1 - p1, s) / cross(r, s)
    p = p1 + r.scale(t)
    return Intersection("point", p, _locus(p, a), _locus(p, b))


@dataclass(frozen=True)
class PolylineString:
    name: str
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(P(*v) for v in self.vertices))

    @property
    def segments(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    @property
    def is_straight(self) -> bool:
        dirs = [b - a for a, b in self.segments]
        return all(same_direction(dirs[0], d) for d in dirs[1:])


@dataclass(frozen=True)
class GeometricSystem:
    strings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(self.strings))
        names = [s.name for s in self.strings]
        if len(set(names)) != len(names):
            raise InvalidString("string names must be pairwise distinct")

    def __getitem__(self, name) -> PolylineString:
        for s in self.strings:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def names(self):
        return [s.name for s in self.strings]

    def replace(self, new: PolylineString) -> "GeometricSystem":
        return GeometricSystem(tuple(new if s.name == new.name else s for s in self.strings))

    def without(self, names) -> "GeometricSystem":
        names = set(names)
        return GeometricSystem(tuple(s for s in self.strings if s.name not in names))


def validate_string(s: PolylineString) -> bool:
    """Raise on a degenerate or non-simple polyline; return True otherwise."""
    v = s.vertices
    if len(v) < 2:
        raise InvalidString(f"string {s.name!r} needs at least two vertices")
    for i in range(len(v) - 1):
        if v[i] == v[i + 1]:
            raise DegenerateEdge(i, s.name)
    segs = s.segments
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            r = seg_intersect(segs[i], segs[j])
            if r.kind == "empty":
                continue
            if j == i + 1 and r.kind == "point" and r.point == segs[i][1]:
                continue
            raise SelfIntersecting((i, j), s.name)
    return True


def point_param(s: PolylineString, p: Point):
    """Canonical parameter ``(segment index, t)`` of ``p`` on ``s``, or None.

    Interior vertices get ``(j, 0)``; only the final vertex uses ``t == 1``.
    """
    segs = s.segments
    for j, (a, b) in enumerate(segs):
        if _on_segment(p, a, b):
            d = b - a
            t = (p.x - a.x) / d.x if d.x != 0 else (p.y - a.y) / d.y
            if t == 1 and j < len(segs) - 1:
                return (j + 1, Fraction(0))
            return (j, t)
    return None


def branch_directions(s: PolylineString, param):
    """Direction vectors (forward, backward) leaving the point at ``param``; None when absent."""
    j, t = param
    v = s.vertices
    last = len(v) - 2
    fwd = None if (j == last and t == 1) else v[j + 1] - v[j]
    if t == 0:
        bwd = None if j == 0 else v[j - 1] - v[j]
    else:
        bwd = v[j] - v[j + 1]
    return fwd, bwd


def strings_through(g: GeometricSystem, p: Point, exclude=()):
    return [s.name for s in g.strings
            if s.name not in exclude and any(_on_segment(p, a, b) for a, b in s.segments)]


def _ray_hit(origin: Point, d: Point, seg):
    """Smallest u > 0 with origin + u*d on ``seg`` (exact), or None."""
    a, b = seg
    e = b - a
    den = cross(d, e)
    if den == 0:
        if cross(a - origin, d) != 0:
            return None
        # collinear with the ray: nearest endpoint ahead
        dd = d.x * d.x + d.y * d.y
        us = [((q - origin).x * d.x + (q - origin).y * d.y) / dd for q in (a, b)]
        ahead = [u for u in us if u > 0]
        if not ahead:
            return None
        if min(us) <= 0 < max(us):
            return None  # origin lies on the segment itself
        return min(ahead)
    w = a - origin
    u = cross(w, e) / den
    v = cross(w, d) / den
    if u > 0 and 0 <= v <= 1:
        return u
    return None


def extend_to_contact(g: GeometricSystem, name: str, which: str = "end") -> GeometricSystem:
    """Prolong a free end of ``name`` along its last segment up to the first string it hits.

    The endpoint is moved onto the hit point, so the final segment simply gets
    longer; all existing intersection points are left untouched.
    """
    s = g[name]
    v = list(s.vertices)
    if which == "end":
        tip, prev = v[-1], v[-2]
    elif which == "start":
        tip, prev = v[0], v[1]
    else:
        raise ValueError("which must be 'start' or 'end'")
    if strings_through(g, tip, exclude=(name,)):
        raise NotAFreeEnd(f"{name}:{which} already lies on another string")
    d = tip - prev
    best = None
    for other in g.strings:
        segs = other.segments
        for j, seg in enumerate(segs):
            if other.name == name:
                # the segment carrying the tip cannot be hit ahead of it
                if (which == "end" and j == len(segs) - 1) or (which == "start" and j == 0):
                    continue
            u = _ray_hit(tip, d, seg)
            if u is not None and (best is None or u < best[0]):
                best = (u, other.name)
    if best is None:
        raise NoHit(f"ray from {name}:{which} escapes every string")
    if best[1] == name:
        raise NoHit(f"ray from {name}:{which} hits its own string first")
    hit = tip + d.scale(best[0])
    if which == "end":
        v[-1] = hit
    else:
        v[0] = hit
    return g.replace(PolylineString(name, tuple(v)))


def trim_to_first_contact(s: PolylineString, p: Point, which: str) -> PolylineString:
    """Cut ``s`` so that the chosen end lands on ``p`` (a point of ``s``)."""
    j, t = point_param(s, p)
    v = list(s.vertices)
    if which == "start":
        return PolylineString(s.name, tuple([p] + v[j + 1:]))
    if t == 0:
        return PolylineString(s.name, tuple(v[:j + 1]))
    return PolylineString(s.name, tuple(v[:j + 1] + [p]))


# -- compilation into the combinatorial model -------------------------------

def _sort_by_angle(items):
    """Sort ``(direction, payload)`` pairs ccw from +x, exactly."""
    from functools import cmp_to_key
    return sorted(items, key=cmp_to_key(lambda a, b: angle_cmp(a[0], b[0])))


def compile_system(g: GeometricSystem):
    """Build the :class:`Arrangement` of a geometric system.

    Nodes are the points lying on two or more strings, numbered ``n0, n1, ...``
    by increasing ``(x, y)``; rotations are the exact ccw order of branch
    directions.  Free ends are not nodes.
    """
    from .arrangement import Arrangement, Branch, END, FORWARD, BACKWARD

    for s in g.strings:
        validate_string(s)
    on = {}  # point -> set of names
    strs = list(g.strings)
    for a_i in range(len(strs)):
        for b_i in range(a_i + 1, len(strs)):
            a, b = strs[a_i], strs[b_i]
            for sa in a.segments:
                for sb in b.segments:
                    r = seg_intersect(sa, sb)
                    if r.kind == "overlap":
                        raise OverlapDetected((a.name, b.name))
                    if r.kind == "point":
                        on.setdefault(r.point, set()).update((a.name, b.name))
    pts = sorted(on)
    ids = {p: f"n{i}" for i, p in enumerate(pts)}
    params = {s.name: [] for s in strs}
    for p in pts:
        for name in on[p]:
            params[name].append((point_param(g[name], p), p))
    walks = {}
    rot_items = {p: [] for p in pts}
    for s in strs:
        seq = sorted(params[s.name])
        first, last = s.vertices[0], s.vertices[-1]
        start_free = not (seq and seq[0][1] == first)
        end_free = not (seq and seq[-1][1] == last)
        walks[s.name] = ([ids[p] for _, p in seq], start_free, end_free)
        for i, (par, p) in enumerate(seq):
            fwd, bwd = branch_directions(s, par)
            if fwd is not None and bwd is not None:
                rot_items[p] += [(fwd, Branch(s.name, i, FORWARD)), (bwd, Branch(s.name, i, BACKWARD))]
            else:
                rot_items[p].append((fwd if fwd is not None else bwd, Branch(s.name, i, END)))
    nodes = {}
    for p, items in rot_items.items():
        srt = _sort_by_angle(items)
        for (d1, b1), (d2, b2) in zip(srt, srt[1:]):
            if same_direction(d1, d2):
                raise OverlapDetected(tuple(sorted((b1.string, b2.string))))
        nodes[ids[p]] = [b for _, b in srt]
    positions = {ids[p]: p for p in pts}
    straight = frozenset(s.name for s in strs if s.is_straight)
    arr = Arrangement(nodes, walks, (), positions, straight)
    return arr.with_outer(_outer_witnesses(g, arr, {p: ids[p] for p in pts}, params))


def _outer_witnesses(g, arr, ids, params):
    """One witness branch per component, found at the component's lowest-left point."""
    from .arrangement import FORWARD
    down = P(0, -1)
    out = []
    for comp in arr.components:
        if len(comp) == 1 and not arr.walks[comp[0]].nodes:
            continue
        p = min(v for name in comp for v in g[name].vertices)
        if p in ids:
            nid = ids[p]
            rot = arr.nodes[nid]
            dirs = []
            for b in rot:
                s = g[b.string]
                par = point_param(s, p)
                fwd, bwd = branch_directions(s, par)
                if b.orient == FORWARD:
                    dirs.append(fwd)
                elif b.orient == "-":
                    dirs.append(bwd)
                else:
                    dirs.append(fwd if fwd is not None else bwd)
            for i in range(len(rot)):
                if ccw_strictly_between(dirs[i], down, dirs[(i + 1) % len(rot)]):
                    out.append(arr.witness_for_dart(arr.dart_of(rot[i])))
                    break
            continue
        name = next(n for n in comp if p in g[n].vertices)
        s = g[name]
        w = arr.walks[name]
        par = point_param(s, p)
        ext = arr._exts[name]
        # index of the walk edge containing p
        before = sum(1 for q, _ in sorted(params[name]) if q < par)
        j = before + (1 if w.start_free else 0) - 1
        if p == s.vertices[0]:
            dart = (name, 0, 1)
        elif p == s.vertices[-1]:
            dart = (name, len(ext) - 2, -1)
        else:
            fwd, bwd = branch_directions(s, par)
            dart = (name, j, 1) if ccw_strictly_between(fwd, down, bwd) else (name, j, -1)
        out.append(arr.witness_for_dart(dart))
    return tuple(t for t in out if t is not None)
