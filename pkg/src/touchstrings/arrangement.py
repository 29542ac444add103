"""Combinatorial model of a touching system of strings.

An :class:`Arrangement` stores, for every contact node, the counterclockwise
cyclic order of the string branches leaving it (a rotation system), and for
every string the sequence of nodes it visits.  Crossings, faces, genus and the
contact-point census are all computed from that data alone.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import NamedTuple, Optional

from .errors import ArrangementError, NotAContactSystem, UnknownNode

FORWARD, BACKWARD, END = "+", "-", "e"


def natural_key(s: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", s) if t]


class Branch(NamedTuple):
    string: str
    index: int
    orient: str

    @property
    def token(self) -> str:
        return f"{self.string}@{self.index}{self.orient}"

    def __str__(self):
        return self.token


_TOKEN = re.compile(r"^(?P<s>.+)@(?P<i>\d+)(?P<o>[+\-e])$")


def parse_branch(tok: str) -> Branch:
    m = _TOKEN.match(tok)
    if not m:
        raise ValueError(f"bad branch token {tok!r}")
    return Branch(m["s"], int(m["i"]), m["o"])


def anchor(rotation) -> tuple:
    """Rotate a cyclic sequence of branches so it starts at its least token."""
    rotation = tuple(rotation)
    if not rotation:
        return rotation
    i = min(range(len(rotation)), key=lambda j: rotation[j].token)
    return rotation[i:] + rotation[:i]


class StringWalk(NamedTuple):
    nodes: tuple
    start_free: bool = True
    end_free: bool = True


class NodeClass(NamedTuple):
    multiplicity: int
    kind: str  # "peak", "flat" or "mixed"
    one_sided: Optional[bool] = None


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Contact nodes with rotations plus string walks.

    ``outer`` holds witness branch tokens, one per connected component whose
    outer face is known: the designated face is the one lying to the left of
    the dart leaving the node along that branch.  ``positions`` and
    ``straight`` are optional geometric metadata from the compiler.
    """
    nodes: dict
    walks: dict
    outer: tuple = ()
    positions: Optional[dict] = None
    straight: Optional[frozenset] = None

    def __post_init__(self):
        nodes = {k: anchor(self.nodes[k]) for k in sorted(self.nodes, key=natural_key)}
        walks = {k: StringWalk(tuple(w[0]), bool(w[1]), bool(w[2]))
                 for k, w in sorted(self.walks.items())}
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "walks", walks)
        object.__setattr__(self, "outer", tuple(sorted(self.outer)))
        if self.straight is not None:
            object.__setattr__(self, "straight", frozenset(self.straight))
        self._check_structure()

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return (self.nodes == other.nodes and self.walks == other.walks
                and self.outer == other.outer and self.positions == other.positions
                and self.straight == other.straight)

    # -- structural consistency -------------------------------------------

    def expected_branches(self, name):
        """The branches a walk requires, as a list of Branch."""
        w = self.walks[name]
        L = len(w.nodes)
        out = []
        for i in range(L):
            back = not (i == 0 and not w.start_free)
            fwd = not (i == L - 1 and not w.end_free)
            if back and fwd:
                out += [Branch(name, i, FORWARD), Branch(name, i, BACKWARD)]
            elif back or fwd:
                out.append(Branch(name, i, END))
            else:
                raise ArrangementError(f"walk {name!r} has a single node and no free end")
        return out

    def _check_structure(self):
        seen = Counter()
        for nid, rot in self.nodes.items():
            if nid == "end":
                raise ArrangementError("'end' is reserved")
            for b in rot:
                seen[b] += 1
        expected = set()
        for name, w in self.walks.items():
            if len(set(w.nodes)) != len(w.nodes):
                raise ArrangementError(f"walk {name!r} visits a node twice")
            if not w.nodes and not (w.start_free and w.end_free):
                raise ArrangementError(f"walk {name!r} without nodes must have two free ends")
            for nid in w.nodes:
                if nid not in self.nodes:
                    raise UnknownNode(nid)
            for b in self.expected_branches(name):
                expected.add(b)
                node = w.nodes[b.index]
                if b not in self.nodes[node]:
                    raise ArrangementError(f"branch {b} missing from rotation at {node}")
        for b, cnt in seen.items():
            if cnt > 1 or b not in expected:
                raise ArrangementError(f"branch {b} does not match any walk")
        for nid, rot in self.nodes.items():
            for b in rot:
                if self.walks[b.string].nodes[b.index] != nid:
                    raise ArrangementError(f"branch {b} listed at wrong node {nid}")
            if len({b.string for b in rot}) < 2:
                raise ArrangementError(f"node {nid} lies on fewer than two strings")
        for tok in self.outer:
            b = parse_branch(tok)
            if b not in seen:
                raise ArrangementError(f"outer witness {tok} is not a branch")

    # -- basic queries ----------------------------------------------------

    def strings_at(self, nid):
        if nid not in self.nodes:
            raise UnknownNode(nid)
        return sorted({b.string for b in self.nodes[nid]})

    def multiplicity(self, nid) -> int:
        return len(self.strings_at(nid))

    def node_of(self, b: Branch):
        return self.walks[b.string].nodes[b.index]

    @cached_property
    def shared_counts(self) -> Counter:
        """Number of common nodes for every pair of strings that meet."""
        c = Counter()
        for nid in self.nodes:
            for u, v in combinations(self.strings_at(nid), 2):
                c[(u, v)] += 1
        return c

    # -- darts and faces --------------------------------------------------

    def _ext(self, name):
        w = self.walks[name]
        return ([("end", name, 0)] if w.start_free else []) + list(w.nodes) + \
               ([("end", name, 1)] if w.end_free else [])

    @cached_property
    def _exts(self):
        return {s: self._ext(s) for s in self.walks}

    def dart_of(self, b: Branch):
        """Outgoing dart ``(string, edge index, +1/-1)`` for a branch."""
        w = self.walks[b.string]
        jv = b.index + (1 if w.start_free else 0)
        n = len(self._exts[b.string])
        if b.orient == FORWARD or (b.orient == END and jv + 1 < n):
            return (b.string, jv, 1)
        return (b.string, jv - 1, -1)

    def tail(self, d):
        s, j, sign = d
        e = self._exts[s]
        return e[j] if sign == 1 else e[j + 1]

    def head(self, d):
        s, j, sign = d
        e = self._exts[s]
        return e[j + 1] if sign == 1 else e[j]

    @cached_property
    def rotations(self) -> dict:
        """Outgoing darts in ccw order around every vertex, markers included."""
        rot = {nid: [self.dart_of(b) for b in r] for nid, r in self.nodes.items()}
        for s, e in self._exts.items():
            w = self.walks[s]
            if w.start_free:
                rot[e[0]] = [(s, 0, 1)]
            if w.end_free:
                rot[e[-1]] = [(s, len(e) - 2, -1)]
        return rot

    @cached_property
    def _rot_index(self):
        return {v: {d: i for i, d in enumerate(r)} for v, r in self.rotations.items()}

    def next_dart(self, d):
        """Next dart along the face lying to the left of ``d``."""
        s, j, sign = d
        rev = (s, j, -sign)
        v = self.tail(rev)
        r = self.rotations[v]
        return r[self._rot_index[v][rev] - 1]

    @cached_property
    def darts(self):
        out = []
        for s, e in self._exts.items():
            for j in range(len(e) - 1):
                out += [(s, j, 1), (s, j, -1)]
        return out

    @cached_property
    def faces(self) -> list:
        """Face boundaries as lists of darts (one orbit of :meth:`next_dart` each)."""
        seen = set()
        faces = []
        for d0 in self.darts:
            if d0 in seen:
                continue
            cyc = []
            d = d0
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = self.next_dart(d)
            faces.append(cyc)
        return faces

    @cached_property
    def face_of_dart(self) -> dict:
        return {d: i for i, f in enumerate(self.faces) for d in f}

    @cached_property
    def components(self) -> list:
        """Connected components as sorted lists of string names."""
        parent = {s: s for s in self.walks}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for nid in self.nodes:
            ss = self.strings_at(nid)
            for t in ss[1:]:
                parent[find(t)] = find(ss[0])
        groups = defaultdict(list)
        for s in self.walks:
            groups[find(s)].append(s)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    def euler_by_component(self):
        """``(V, E, F)`` per component, faces traced separately in each."""
        comp_of = {s: i for i, g in enumerate(self.components) for s in g}
        V = [0] * len(self.components)
        E = [0] * len(self.components)
        F = [0] * len(self.components)
        for nid in self.nodes:
            V[comp_of[self.strings_at(nid)[0]]] += 1
        for s, w in self.walks.items():
            c = comp_of[s]
            V[c] += w.start_free + w.end_free
            E[c] += len(self._exts[s]) - 1
        for f in self.faces:
            F[comp_of[f[0][0]]] += 1
        return list(zip(V, E, F))

    def euler_characteristic(self):
        """``V - E + F`` of the plane drawing, where components share one outer face."""
        tot = [sum(x) for x in zip(*self.euler_by_component())] or [0, 0, 0]
        V, E, F = tot
        C = len(self.components)
        return V - E + (F - C + 1)

    @property
    def is_genus_zero(self) -> bool:
        return all(v - e + f == 2 for v, e, f in self.euler_by_component())

    # -- outer face -------------------------------------------------------

    @cached_property
    def outer_faces(self) -> Optional[dict]:
        """Map component index -> face index of its outer face, or None if unknown.

        Components without nodes have a single face and need no witness.
        """
        comp_of = {s: i for i, g in enumerate(self.components) for s in g}
        out = {}
        for tok in self.outer:
            b = parse_branch(tok)
            out[comp_of[b.string]] = self.face_of_dart[self.dart_of(b)]
        for i, g in enumerate(self.components):
            if i not in out:
                if len(g) == 1 and not self.walks[g[0]].nodes:
                    out[i] = self.face_of_dart[(g[0], 0, 1)]
                else:
                    return None
        return out

    def outer_face_darts(self):
        of = self.outer_faces
        if of is None:
            return None
        return {d for fi in of.values() for d in self.faces[fi]}

    def free_ends_on_outer_face(self):
        """Free-end markers whose dart lies on an outer face (None if unknown)."""
        od = self.outer_face_darts()
        if od is None:
            return None
        out = []
        for v, r in self.rotations.items():
            if isinstance(v, tuple) and r[0] in od:
                out.append(v)
        return sorted(out)

    def nodes_on_outer_face(self):
        od = self.outer_face_darts()
        if od is None:
            return None
        return sorted((nid for nid in self.nodes
                       if any(d in od for d in self.rotations[nid])), key=natural_key)

    def witness_for_dart(self, d) -> Optional[str]:
        """A branch token at a node whose dart shares the face of ``d``."""
        f = self.faces[self.face_of_dart[d]]
        node_darts = [x for x in f if not isinstance(self.tail(x), tuple)]
        if not node_darts:
            return None
        toks = []
        for x in node_darts:
            nid = self.tail(x)
            for b in self.nodes[nid]:
                if self.dart_of(b) == x:
                    toks.append(b.token)
        return min(toks)

    def with_outer(self, outer) -> "Arrangement":
        return Arrangement(self.nodes, self.walks, tuple(outer), self.positions, self.straight)


# -- operations ---------------------------------------------------------------

def classify_node(arr: Arrangement, nid) -> NodeClass:
    if nid not in arr.nodes:
        raise UnknownNode(nid)
    rot = arr.nodes[nid]
    d = len({b.string for b in rot})
    through = sorted({b.string for b in rot if b.orient != END})
    if not through:
        return NodeClass(d, "peak")
    if len(through) > 1:
        return NodeClass(d, "mixed")
    t = through[0]
    pos = [i for i, b in enumerate(rot) if b.string == t]
    i, j = pos
    inside = {rot[x].string for x in range(i + 1, j)}
    outside = {rot[x].string for x in list(range(j + 1, len(rot))) + list(range(0, i))}
    return NodeClass(d, "flat", not (inside and outside))


def find_crossings(arr: Arrangement):
    """Pairs of strings whose branches alternate around a shared node."""
    out = []
    for nid, rot in arr.nodes.items():
        pos = defaultdict(list)
        for i, b in enumerate(rot):
            if b.orient != END:
                pos[b.string].append(i)
        for s, t in combinations(sorted(pos), 2):
            a1, a2 = pos[s]
            b1, b2 = pos[t]
            if (a1 < b1 < a2) != (a1 < b2 < a2):
                out.append((s, t, nid))
    return out


@dataclass(frozen=True)
class SystemProfile:
    n: int
    k: int
    mu: int
    c: int
    free_ends: int
    p: dict = field(default_factory=dict)
    f: dict = field(default_factory=dict)
    is_contact_system: bool = True
    is_one_sided: bool = True
    is_1_intersecting: bool = True
    is_two_touching: bool = True
    kinds: dict = field(default_factory=dict)

    def count(self, kind, i):
        return (self.p if kind == "p" else self.f).get(i, 0)


def profile(arr: Arrangement) -> SystemProfile:
    classes = {nid: classify_node(arr, nid) for nid in arr.nodes}
    k = max((c.multiplicity for c in classes.values()), default=0)
    mu = max(arr.shared_counts.values(), default=0)
    free = sum(w.start_free + w.end_free for w in arr.walks.values())
    contact = all(c.kind != "mixed" for c in classes.values())
    p, f = {}, {}
    if contact:
        for i in range(2, k + 1):
            p[i] = sum(1 for c in classes.values() if c.kind == "peak" and c.multiplicity == i)
            f[i] = sum(1 for c in classes.values() if c.kind == "flat" and c.multiplicity == i)
    one_sided = contact and all(c.one_sided for c in classes.values() if c.kind == "flat")
    kinds = Counter(c.kind for c in classes.values())
    return SystemProfile(
        n=len(arr.walks), k=k, mu=mu, c=len(arr.nodes), free_ends=free, p=p, f=f,
        is_contact_system=contact, is_one_sided=one_sided,
        is_1_intersecting=mu <= 1, is_two_touching=k <= 2, kinds=dict(kinds))


@dataclass(frozen=True)
class PlaneContactGraph:
    vertices: tuple
    edges: tuple
    outer_face_peaks: Optional[frozenset]


def contact_plane_graph(arr: Arrangement) -> PlaneContactGraph:
    """Plane graph on contact points; edges join nodes consecutive along a string."""
    prof = profile(arr)
    if not prof.is_contact_system:
        raise NotAContactSystem("mixed nodes present")
    edges = []
    for w in arr.walks.values():
        for a, b in zip(w.nodes, w.nodes[1:]):
            edges.append(tuple(sorted((a, b), key=natural_key)))
    if prof.is_1_intersecting:
        dup = [e for e, c in Counter(edges).items() if c > 1]
        assert not dup, f"parallel edges in a 1-intersecting system: {dup}"
    edges.sort(key=lambda e: (natural_key(e[0]), natural_key(e[1])))
    on_outer = arr.nodes_on_outer_face()
    peaks = None
    if on_outer is not None:
        peaks = frozenset(n for n in on_outer if classify_node(arr, n).kind == "peak")
    return PlaneContactGraph(tuple(arr.nodes), tuple(edges), peaks)


class RelationReport(NamedTuple):
    variant: str
    applicable: bool
    holds: Optional[bool] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    reason: str = ""


RELATIONS = ("ends", "eq1", "eq3", "ineq2", "ineq4", "ineq5")


def _trimmed_preconditions(arr, prof):
    if not (prof.is_contact_system and prof.is_1_intersecting):
        return "needs a 1-intersecting contact system"
    if prof.free_ends:
        return "some string end is not a contact point"
    if any(len(w.nodes) < 2 for w in arr.walks.values()):
        return "some string has fewer than two contact points"
    if prof.c < 3:
        return "fewer than three contact points"
    return ""


def check_relations(arr: Arrangement, variant: str, prof: Optional[SystemProfile] = None) -> RelationReport:
    """Evaluate one counting relation on ``arr``; inapplicable is never a failure."""
    if variant not in RELATIONS:
        raise ValueError(f"unknown relation {variant!r}")
    prof = prof or profile(arr)
    P = lambda i: prof.p.get(i, 0)  # noqa: E731
    F = lambda i: prof.f.get(i, 0)  # noqa: E731
    ks = range(2, prof.k + 1)
    if not prof.is_contact_system:
        return RelationReport(variant, False, reason="not a contact system")
    if variant in ("ends", "eq1"):
        lhs = 2 * prof.n
        rhs = sum(i * P(i) + (i - 1) * F(i) for i in ks)
        if variant == "ends":
            rhs += prof.free_ends
        return RelationReport(variant, True, lhs == rhs, lhs, rhs)
    if variant == "eq3":
        if not prof.is_1_intersecting:
            return RelationReport(variant, False, reason="not 1-intersecting")
        lhs = len(arr.shared_counts)
        rhs = sum(comb(i, 2) * (P(i) + F(i)) for i in ks)
        return RelationReport(variant, True, lhs == rhs, lhs, rhs)
    why = _trimmed_preconditions(arr, prof)
    if why:
        return RelationReport(variant, False, reason=why)
    if variant == "ineq2":
        lhs = sum((i - 6) * P(i) + (i - 5) * F(i) for i in ks)
        rhs = -12 - 2 * F(2)
    elif variant == "ineq4":
        if not prof.is_one_sided:
            return RelationReport(variant, False, reason="not one-sided")
        lhs = sum((i - 6) * P(i) + (i - 3) * F(i) for i in ks)
        rhs = -12
    else:
        if arr.straight is None or set(arr.walks) - arr.straight:
            return RelationReport(variant, False, reason="strings not known to be straight segments")
        cpg = contact_plane_graph(arr)
        if cpg.outer_face_peaks is None:
            return RelationReport(variant, False, reason="outer face unknown")
        peaks = {n for n in arr.nodes if classify_node(arr, n).kind == "peak"}
        if peaks - cpg.outer_face_peaks:
            return RelationReport(variant, False, reason="a peak is not on the outer face")
        lhs = sum((i - 4) * P(i) + (i - 5) * F(i) for i in ks)
        rhs = -6 - 2 * F(2)
    return RelationReport(variant, True, lhs <= rhs, lhs, rhs)
