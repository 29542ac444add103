"""Generators for extremal families and small named instances.

Braids, suns and the string cliques built from them are purely combinatorial
(rotation systems); named figures and random systems carry coordinates.
"""
from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources
from itertools import combinations, permutations, product

import networkx as nx

from .arrangement import Arrangement, Branch, natural_key
from .errors import (BadParam, GeometryError, NoHit, NotAFreeEnd, UnknownName)
from .geometry import (GeometricSystem, PolylineString, P, compile_system,
                       extend_to_contact, point_param, seg_intersect, trim_to_first_contact)

NAMED = ("fig5a", "fig5b", "fig7a", "fig7b", "fig7c")

_FLIP = {"+": "-", "-": "+", "e": "e"}


def as_arrangement(x) -> Arrangement:
    return x if isinstance(x, Arrangement) else compile_system(x)


def _free_end_face(arr: Arrangement) -> int:
    """Index of the face carrying the most free-end markers (first on ties)."""
    def ends(f):
        return sum(1 for d in f if isinstance(arr.tail(d), tuple))
    return max(range(len(arr.faces)), key=lambda i: (ends(arr.faces[i]), -i))


def _longest_face(arr: Arrangement) -> int:
    return max(range(len(arr.faces)), key=lambda i: (len(arr.faces[i]), -i))


def _with_face_as_outer(arr: Arrangement, fi: int) -> Arrangement:
    return arr.with_outer((arr.witness_for_dart(arr.faces[fi][0]),))


# -- braids, suns, cliques ---------------------------------------------------

def _braid_parts(names, node_ids):
    """Rotations and walks of a braid: right branches bottom-up, then left ones top-down."""
    nodes = {}
    for j, nid in enumerate(node_ids):
        nodes[nid] = [Branch(s, j, "+") for s in names] + [Branch(s, j, "-") for s in reversed(names)]
    walks = {s: (list(node_ids), True, True) for s in names}
    return nodes, walks


def gen_braid(n: int) -> Arrangement:
    if n < 2:
        raise BadParam("a braid needs at least two strings")
    names = [f"s{i}" for i in range(1, n + 1)]
    nodes, walks = _braid_parts(names, [f"c{j}" for j in range(1, n + 1)])
    arr = Arrangement(nodes, walks)
    return _with_face_as_outer(arr, _free_end_face(arr))


def _sun_parts(l: int, prefix=""):
    m = 2 * l
    nodes, walks = {}, {}
    letters = "abc"
    for c in letters:
        n, w = _braid_parts([f"{prefix}{c}{h}" for h in range(1, m + 1)],
                            [f"{prefix}{c.upper()}{j}" for j in range(1, m + 1)])
        nodes.update(n)
        walks.update(w)
    for i, c in enumerate(letters):
        nxt = letters[(i + 1) % 3]
        top = f"{prefix}{nxt}{m}"
        for h in range(1, m + 1):
            name = f"{prefix}{c}{h}"
            nid = f"{prefix}{nxt.upper()}{h}"
            walks[name] = (walks[name][0] + [nid], True, False)
            rot = nodes[nid]
            # land in the gap above the topmost string of the next braid
            rot.insert(rot.index(Branch(top, h - 1, "+")) + 1, Branch(name, m, "e"))
    return nodes, walks


def gen_sun(l: int) -> Arrangement:
    """Three 2l-braids, each string of one braid ending on the next braid."""
    if l < 1:
        raise BadParam("l must be at least 1")
    arr = Arrangement(*_sun_parts(l))
    return _with_face_as_outer(arr, _free_end_face(arr))


def _outer_free_end_order(arr: Arrangement):
    """Strings whose free end lies on the outer face, in boundary order."""
    fi = arr.outer_faces[0]
    return [arr.tail(d)[1] for d in arr.faces[fi] if isinstance(arr.tail(d), tuple)]


def gen_string_clique(k: int) -> Arrangement:
    """9(k-1)/2 pairwise touching strings, k-touching, for odd k."""
    if k < 3 or k % 2 == 0:
        raise BadParam("k must be odd and at least 3")
    l = (k - 1) // 2
    order = _outer_free_end_order(gen_sun(l))
    near, far = order[:3 * l], order[3 * l:]
    prefixes = ("P", "Q", "R")
    nodes, walks = {}, {}
    for p in prefixes:
        n, w = _sun_parts(l, p)
        nodes.update(n)
        walks.update(w)
    merged = dict(walks)
    count = 0
    for i, p in enumerate(prefixes):
        q = prefixes[(i + 1) % 3]
        for a, b in zip([p + s for s in far], reversed([q + s for s in near])):
            count += 1
            name = f"x{count}"
            (wa, _, ea), (wb, _, eb) = walks[a], walks[b]
            la = len(wa)
            del merged[a], merged[b]
            merged[name] = (list(reversed(wa)) + list(wb), ea, eb)
            for nid in wa:
                nodes[nid] = [Branch(name, la - 1 - x.index, _FLIP[x.orient]) if x.string == a else x
                              for x in nodes[nid]]
            for nid in wb:
                nodes[nid] = [Branch(name, la + x.index, x.orient) if x.string == b else x
                              for x in nodes[nid]]
    arr = Arrangement(nodes, merged)
    return _with_face_as_outer(arr, _longest_face(arr))


# -- named figures -----------------------------------------------------------

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def _gadgets(v, through, ends):
    """Ways to blow a node up into a tree with one vertex per through-string.

    A node where the through-strings pairwise touch is exactly the contraction
    of such a tree, so a realization exists iff one blown-up graph is planar.
    """
    if len(through) <= 1:
        yield [], {s: (v, "") for s in through + ends}
        return
    if len(through) > 3:
        raise BadParam(f"node {v} has more than three through-strings")
    trees = []
    if len(through) == 2:
        trees.append(([((v, through[0]), (v, through[1]))], list(through)))
    else:
        trees.append(([((v, "*"), (v, t)) for t in through], list(through) + ["*"]))
        for mid in through:
            a, b = [t for t in through if t != mid]
            trees.append(([((v, a), (v, mid)), ((v, mid), (v, b))], list(through)))
    for edges, spots in trees:
        for side in product(spots, repeat=len(ends)):
            att = {t: (v, t) for t in through}
            att.update({e: (v, x) for e, x in zip(ends, side)})
            yield edges, att


def _branch_kinds(walks):
    out = {}
    for s, (w, sf, ef) in walks.items():
        for i, v in enumerate(w):
            back = i > 0 or sf
            fwd = i < len(w) - 1 or ef
            out[(v, s)] = (i, back, fwd)
    return out


def realize_touching(walks):
    """A crossing-free genus-0 arrangement with the given walks, or None.

    ``walks`` maps names to ``(node list, start_free, end_free)``.  Nodes may
    carry up to three through-strings.
    """
    kinds = _branch_kinds(walks)
    node_ids = sorted({v for w in walks.values() for v in w[0]}, key=natural_key)
    options = []
    for v in node_ids:
        here = sorted((s for (x, s) in kinds if x == v), key=natural_key)
        through = [s for s in here if kinds[(v, s)][1] and kinds[(v, s)][2]]
        options.append(list(_gadgets(v, through, [s for s in here if s not in through])))
    for combo in product(*options):
        g = nx.Graph()
        att = {}
        label = {}
        for v, (edges, a) in zip(node_ids, combo):
            g.add_edges_from(edges)
            g.add_nodes_from(a.values())
            att.update({(v, s): x for s, x in a.items()})
        for s, (w, sf, ef) in walks.items():
            ext = ([("end", s, 0)] if sf else []) + [att[(v, s)] for v in w] + ([("end", s, 1)] if ef else [])
            for x, y in zip(ext, ext[1:]):
                g.add_edge(x, y)
                label[(x, y)] = (s, 1)
                label[(y, x)] = (s, -1)
        ok, emb = nx.check_planarity(g)
        if ok:
            return _contract(walks, kinds, node_ids, emb, label)
    return None


def _contract(walks, kinds, node_ids, emb, label):
    nodes = {}
    for v in node_ids:
        members = {x for x in emb.nodes if isinstance(x, tuple) and len(x) == 2 and x[0] == v}
        root = min(members, key=str)
        order = []

        def tour(x, parent):
            nbrs = list(emb.neighbors_cw_order(x))[::-1]
            if parent is not None:
                i = nbrs.index(parent)
                nbrs = nbrs[i + 1:] + nbrs[:i]
            for y in nbrs:
                if y in members:
                    tour(y, x)
                else:
                    order.append(label[(x, y)])
        tour(root, None)
        rot = []
        for s, sign in order:
            i, back, fwd = kinds[(v, s)]
            rot.append(Branch(s, i, "e" if not (back and fwd) else ("+" if sign == 1 else "-")))
        nodes[v] = rot
    arr = Arrangement(nodes, walks)
    return _with_face_as_outer(arr, _longest_face(arr))


def fano_walks(drop_line=None):
    """Candidate walks for seven pairwise touching strings on the Fano pattern.

    Every line is a triple node, except ``drop_line`` (an index) whose three
    pairs get 2-fold nodes.  Yields every combination of visiting orders.
    """
    nodes = {}
    for i, L in enumerate(FANO_LINES):
        if i == drop_line:
            for j, pair in enumerate(combinations(L, 2), start=1):
                nodes[f"d{j}"] = pair
        else:
            nodes[f"t{i + 1}"] = L
    per = {p: [v for v, S in nodes.items() if p in S] for p in range(1, 8)}

    def orders(vs):
        return [list(o) for o in permutations(vs) if natural_key(o[0]) < natural_key(o[-1])]
    for choice in product(*(orders(per[p]) for p in range(1, 8))):
        yield {f"s{p}": (w, False, False) for p, w in zip(range(1, 8), choice)}


def search_fano_realization(drop_line=None):
    """First realizable candidate of :func:`fano_walks`, and how many planar
    contact-graph candidates were examined."""
    tried = 0
    for walks in fano_walks(drop_line):
        h = nx.Graph()
        for w, _, _ in walks.values():
            h.add_edges_from(zip(w, w[1:]))
        if not nx.check_planarity(h)[0]:
            continue
        tried += 1
        arr = realize_touching(walks)
        if arr is not None:
            return arr, tried
    return None, tried


def _fig5a() -> Arrangement:
    from .formats import parse_arr
    text = resources.files("touchstrings").joinpath("data/fig5a.arr").read_text()
    return parse_arr(text)


def _fig5b(k: int) -> GeometricSystem:
    if k < 3:
        raise BadParam("fig5b needs k >= 3")
    top = P(k + 1, 1)
    strings = [PolylineString(f"s{i}", (P(i, 0), top, P(2 * k + 2 - i, 0))) for i in range(1, k + 1)]
    strings.append(PolylineString("a", (P(1, 0), P(k + 1, 0))))
    strings.append(PolylineString("b", (P(k + 1, 0), P(2 * k + 1, 0))))
    return GeometricSystem(strings)


def _fig7c(k: int) -> GeometricSystem:
    if k < 2:
        raise BadParam("fig7c needs k >= 2")
    h = Fraction(1, 2)
    strings = [PolylineString(f"s{i}", (P(0, 0), P(i, 1))) for i in range(1, k + 1)]
    strings.append(PolylineString("t", (P(h, 1), P(k + h, 1))))
    return GeometricSystem(strings)


def _segments(pairs):
    return GeometricSystem([PolylineString(name, (P(*a), P(*b))) for name, a, b in pairs])


# Seven segments whose contact graph is the Moser spindle: two rhombi sharing
# the long base "a", with their far tips "d" and "g" joined.  Every contact
# point holds exactly two segments.
FIG7A = (("a", (-10, 0), (40, 0)), ("b", (-8, 0), (-2, 12)), ("c", (-2, 0), (-4, 8)),
         ("d", (-3, 4), (-3, 10)), ("e", (30, 0), (0, 6)), ("f", (6, 0), (10, 4)),
         ("g", (-3, Fraction(15, 2)), (8, 2)))
# Nine segments whose contact graph glues two copies of K5 minus an edge at "a"
# and joins their other loose vertices "e" and "i".  Any 4-colouring would give
# "e" and "i" the colour of "a" in both halves, so five colours are needed.
FIG7B = (("a", (-21, 33), (Fraction(36, 5), Fraction(24, 5))),
         ("b", (36, 12), (Fraction(36, 5), Fraction(24, 5))),
         ("c", (Fraction(44, 5), Fraction(-8, 5)), (Fraction(27, 5), 12)),
         ("d", (0, 12), (36, 12)),
         ("e", (Fraction(-10, 3), Fraction(-23, 3)), (36, 12)),
         ("f", (Fraction(15, 11), Fraction(35, 11)), (Fraction(19, 3), Fraction(17, 3))),
         ("g", (-21, 33), (Fraction(7, 3), Fraction(11, 3))),
         ("h", (-21, 33), (Fraction(9, 5), Fraction(13, 5))),
         ("i", (Fraction(7, 3), Fraction(11, 3)), (Fraction(-10, 3), Fraction(-23, 3))))


def gen_named(name: str, k=None):
    if name not in NAMED:
        raise UnknownName(name)
    if name == "fig5a":
        return _fig5a()
    if name == "fig5b":
        if k is None:
            raise BadParam("fig5b needs k")
        return _fig5b(k)
    if name == "fig7c":
        if k is None:
            raise BadParam("fig7c needs k")
        return _fig7c(k)
    return _segments(FIG7A if name == "fig7a" else FIG7B)


# -- random segment systems --------------------------------------------------

def _touches_any(seg, strings):
    return any(seg_intersect(seg, t).kind != "empty" for s in strings for t in s.segments)


def gen_random_segments(seed, count: int, bbox=(0, 0, 20, 20), max_k: int = 3) -> GeometricSystem:
    """Random contact system of segments.

    Disjoint integer segments are placed first, then free ends are prolonged
    until they hit another segment, skipping prolongations that would put more
    than ``max_k`` segments through a point.
    """
    if count < 0:
        raise BadParam("count must be non-negative")
    rng = random.Random(seed)
    x0, y0, x1, y1 = bbox
    placed = []
    tries = 0
    while len(placed) < count and tries < 200 * max(count, 1):
        tries += 1
        a = P(rng.randint(x0, x1), rng.randint(y0, y1))
        b = P(rng.randint(x0, x1), rng.randint(y0, y1))
        if a == b:
            continue
        s = PolylineString(f"s{len(placed):02d}", (a, b))
        if not _touches_any(s.segments[0], placed):
            placed.append(s)
    g = GeometricSystem(placed)
    ends = [(s.name, w) for s in placed for w in ("end", "start")]
    rng.shuffle(ends)
    for name, which in ends:
        try:
            g2 = extend_to_contact(g, name, which)
            arr = compile_system(g2)
        except (NoHit, NotAFreeEnd, GeometryError):
            continue
        if all(len(arr.strings_at(n)) <= max_k for n in arr.nodes):
            g = g2
    return g


def prune_free_ends(g: GeometricSystem) -> GeometricSystem:
    """Cut every free end back to its last contact point and drop strings with
    fewer than two contact points, until nothing changes."""
    while True:
        if not g.strings:
            return g
        arr = compile_system(g)
        drop = [s for s, w in arr.walks.items() if len(w.nodes) < 2]
        if drop:
            g = g.without(drop)
            continue
        changed = False
        for s, w in arr.walks.items():
            if not (w.start_free or w.end_free):
                continue
            cur = g[s]
            if w.start_free:
                cur = trim_to_first_contact(cur, arr.positions[w.nodes[0]], "start")
            if w.end_free:
                cur = trim_to_first_contact(cur, arr.positions[w.nodes[-1]], "end")
            g = g.replace(cur)
            changed = True
        if not changed:
            return g


# -- random touching arrangements --------------------------------------------

def gen_random_touching(seed, n: int = 6, steps: int = 12, max_k: int = 3) -> Arrangement:
    """Random crossing-free arrangement where every string passes through every
    node it meets (no string ends at a node).

    Strings start as free curves and are joined one by one.  Each step picks a
    face and either pinches two boundary edges of different strings into a new
    2-fold node, or pushes a further string into a node on that face (while the
    node stays at most ``max_k``-fold).
    """
    from .surgery import Editable

    if n < 2:
        raise BadParam("need at least two strings")
    rng = random.Random(seed)
    names = [f"s{i}" for i in range(1, n + 1)]
    ed = Editable(Arrangement({}, {s: ([], True, True) for s in names}))

    def face_sides(arr):
        out = []
        for f in arr.faces:
            out.append([Editable.dart_key(arr, d) for d in f])
        return out

    def pinch(d1, d2):
        (s, u1, v1), (t, u2, v2) = d1, d2
        z = ed.fresh("n")
        ed.subdivide(s, u1, v1, z)
        ed.subdivide(t, u2, v2, z)
        ed.rot[z] = [(s, v1), (t, u2), (t, v2), (s, u1)]

    def push(arr, d_in, d):
        # insert string of d into the node at the head of d_in, in the corner of the face
        s, a, b = d
        x = d_in[2]
        d_out = Editable.dart_key(arr, arr.next_dart(Editable.find_dart(arr, d_in)))
        z_keys = ed.rot[x]
        i = z_keys.index((d_out[0], d_out[2]))
        # tail neighbour of the new branches is the face corner after d_out's branch
        ed.subdivide(s, a, b, "tmp")
        del ed.rot["tmp"]
        w = ed.walks[s]
        w[w.index("tmp")] = x
        ed.retarget(a, s, "tmp", x)
        ed.retarget(b, s, "tmp", x)
        z_keys[i + 1:i + 1] = [(s, a), (s, b)]

    # connect everything first: string j touches a random edge of the part built so far
    for j in range(1, n):
        arr = ed.to_arrangement()
        sides = [d for f in face_sides(arr) for d in f if d[0] in names[:j]]
        pinch(rng.choice(sides), (names[j], ("end", names[j], 0), ("end", names[j], 1)))
    for _ in range(steps):
        arr = ed.to_arrangement()
        faces = face_sides(arr)
        f = rng.choice(faces)
        moves = []
        for a_i in range(len(f)):
            for b_i in range(len(f)):
                d1, d2 = f[a_i], f[b_i]
                if d1[0] < d2[0]:
                    moves.append(("pinch", d1, d2))
                x = d1[2]
                if (not isinstance(x, tuple) and d2[0] not in {k[0] for k in ed.rot[x]}
                        and len(ed.rot[x]) // 2 < max_k):
                    moves.append(("push", d1, d2))
        if not moves:
            continue
        kind, d1, d2 = rng.choice(moves)
        if kind == "pinch":
            pinch(d1, d2)
        else:
            push(arr, d1, d2)
    arr = ed.to_arrangement()
    return _with_face_as_outer(arr, _free_end_face(arr))
