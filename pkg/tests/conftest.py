"""Shared helpers and independent oracles for the test suite.

The oracles here deliberately avoid the package's own machinery: faces are
traced with plain permutations, colorings are brute forced, and so on.
"""
from __future__ import annotations

from itertools import combinations, product

from touchstrings import GeometricSystem, PolylineString
from touchstrings.arrangement import Arrangement, parse_branch


def segs(*specs):
    """``segs(("a", (0, 0), (1, 0)), ...)`` as a GeometricSystem."""
    return GeometricSystem([PolylineString(n, tuple(pts)) for n, *pts in specs])


def arr_from(rots: dict, walks: dict, outer=()):
    """Arrangement from token strings: ``rots={"v": "s@0+ t@0e ..."}``."""
    nodes = {k: [parse_branch(t) for t in v.split()] for k, v in rots.items()}
    return Arrangement(nodes, walks, outer)


# -- face tracing oracle ------------------------------------------------------

def _half_edges(arr: Arrangement):
    """Half-edges keyed ``(vertex, string, slot)`` with slot the neighbour index.

    Free ends become degree-one vertices ``("end", s, side)``.
    """
    succ = {}
    twin = {}
    for name, w in arr.walks.items():
        seq = ([("end", name, 0)] if w.start_free else []) + list(w.nodes) + \
              ([("end", name, 1)] if w.end_free else [])
        for i in range(len(seq) - 1):
            a = (seq[i], name, i, +1)
            b = (seq[i + 1], name, i + 1, -1)
            twin[a], twin[b] = b, a
    # rotation successors
    for nid, rot in arr.nodes.items():
        hs = []
        for br in rot:
            w = arr.walks[br.string]
            off = 1 if w.start_free else 0
            pos = br.index + off
            if br.orient == "+":
                hs.append((nid, br.string, pos, +1))
            elif br.orient == "-":
                hs.append((nid, br.string, pos, -1))
            else:
                at_start = br.index == 0 and not w.start_free
                hs.append((nid, br.string, pos, +1 if at_start else -1))
        for i, h in enumerate(hs):
            succ[h] = hs[(i + 1) % len(hs)]
    for h in twin:
        if h not in succ:  # free-end vertex, degree one
            succ[h] = h
    return succ, twin


def face_count(arr: Arrangement) -> int:
    succ, twin = _half_edges(arr)
    seen = set()
    faces = 0
    for h in twin:
        if h in seen:
            continue
        faces += 1
        x = h
        while x not in seen:
            seen.add(x)
            x = succ[twin[x]]
    return faces


def genus_zero_oracle(arr: Arrangement) -> bool:
    """V - E + F = 2C with faces traced per component (each has its own outer face)."""
    succ, twin = _half_edges(arr)
    verts = {h[0] for h in twin} | set(arr.nodes)
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v
    for h, t in twin.items():
        parent[find(h[0])] = find(t[0])
    comps = len({find(v) for v in verts})
    return len(verts) - len(twin) // 2 + face_count(arr) == 2 * comps


# -- graph oracles ---------------------------------------------------------------

def brute_chromatic(vertices, edges) -> int:
    vs = list(vertices)
    idx = {v: i for i, v in enumerate(vs)}
    es = [(idx[u], idx[v]) for u, v in edges]
    if not vs:
        return 0
    for c in range(1, len(vs) + 1):
        for col in product(range(c), repeat=len(vs) - 1):
            col = (0,) + col
            if all(col[u] != col[v] for u, v in es):
                return c
    raise AssertionError("unreachable")


def brute_degeneracy(vertices, edges) -> int:
    vs = list(vertices)
    adj = {v: set() for v in vs}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = 0
    for r in range(1, len(vs) + 1):
        for sub in combinations(vs, r):
            s = set(sub)
            best = max(best, min(len(adj[v] & s) for v in s))
    return best


def pairs_touching_geometrically(g: GeometricSystem):
    """Unordered string pairs that share a point, by exhaustive segment tests."""
    from touchstrings.geometry import seg_intersect
    out = set()
    for a, b in combinations(g.strings, 2):
        if any(seg_intersect(x, y).kind != "empty" for x in a.segments for y in b.segments):
            out.add(tuple(sorted((a.name, b.name))))
    return out



# -- acceptance summary ---------------------------------------------------------

import pytest  # noqa: E402

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when != "call" and not (rep.when == "setup" and rep.skipped):
        return
    n, title = m.args
    if hasattr(rep, "wasxfail"):
        state = "xfail"
    else:
        state = rep.outcome
    _CRITERIA.setdefault(n, [title, []])[1].append((item.name, state))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, parts = _CRITERIA[n]
        ok = all(s == "passed" for _, s in parts)
        detail = ", ".join(f"{name}={s}" for name, s in parts)
        tr.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
