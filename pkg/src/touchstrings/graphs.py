"""Intersection graphs, degeneracy, greedy and exact coloring, planarity."""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import networkx as nx

from .errors import BadOrder, TooLarge


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple
    edges: frozenset  # of sorted 2-tuples

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        es = frozenset(tuple(sorted(e)) for e in self.edges)
        for u, v in es:
            if u == v:
                raise ValueError(f"loop at {u}")
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, vertices, edges):
        return cls(tuple(vertices), frozenset(edges))

    @property
    def adj(self) -> dict:
        a = {v: set() for v in self.vertices}
        for u, v in self.edges:
            a[u].add(v)
            a[v].add(u)
        return a

    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return len(self.edges)

    def min_degree(self) -> int:
        return min((len(s) for s in self.adj.values()), default=0)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def to_networkx(self):
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.edges)
        return G


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple
    edges: Counter  # sorted pair -> multiplicity

    @property
    def edge_count(self) -> int:
        return sum(self.edges.values())

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.vertices, frozenset(self.edges))


def intersection_graph(arr) -> SimpleGraph:
    return SimpleGraph(tuple(arr.walks), frozenset(arr.shared_counts))


def string_multigraph(arr) -> MultiGraph:
    return MultiGraph(tuple(sorted(arr.walks)), Counter(arr.shared_counts))


class DegeneracyReport(NamedTuple):
    order: tuple
    degeneracy: int


def degeneracy_order(g: SimpleGraph) -> DegeneracyReport:
    """Peel minimum-degree vertices, ties to the smallest name."""
    adj = g.adj
    deg = {v: len(adj[v]) for v in g.vertices}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed = set()
    order = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        k = max(k, d)
        for u in adj[v]:
            if u not in removed:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return DegeneracyReport(tuple(order), k)


class Coloring(NamedTuple):
    assignment: dict
    colors_used: int

    def is_proper(self, g: SimpleGraph) -> bool:
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges)


def greedy_color(g: SimpleGraph, order) -> Coloring:
    """First-fit coloring in reverse peeling order."""
    order = list(order)
    if sorted(order) != sorted(g.vertices) or len(set(order)) != len(order):
        raise BadOrder("order must be a permutation of the vertices")
    adj = g.adj
    col = {}
    for v in reversed(order):
        used = {col[u] for u in adj[v] if u in col}
        c = 1
        while c in used:
            c += 1
        col[v] = c
    return Coloring(col, len(set(col.values())))


def greedy_clique(g: SimpleGraph) -> list:
    """A maximal clique grown from every start vertex; the largest one found."""
    adj = g.adj
    best = []
    for v in sorted(g.vertices, key=lambda x: (-len(adj[x]), x)):
        cl = [v]
        cand = set(adj[v])
        while cand:
            u = max(sorted(cand), key=lambda x: len(adj[x] & cand))
            cl.append(u)
            cand &= adj[u]
        if len(cl) > len(best):
            best = cl
    return best


def chromatic_exact(g: SimpleGraph, cap: int = 24) -> int:
    """Exact chromatic number.

    A clique as large as a greedy coloring settles any size; otherwise the
    branch and bound search runs only up to ``cap`` vertices.
    """
    if g.n == 0:
        return 0
    lower = len(greedy_clique(g))
    upper = greedy_color(g, degeneracy_order(g).order).colors_used
    if lower == upper:
        return lower
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds cap {cap}")
    adj = {v: adj for v, adj in g.adj.items()}
    verts = list(g.vertices)
    best = [upper]

    # DSATUR branch and bound
    def search(col, used):
        if len(col) == len(verts):
            best[0] = min(best[0], used)
            return
        if used >= best[0]:
            return
        v = max((x for x in verts if x not in col),
                key=lambda x: (len({col[u] for u in adj[x] if u in col}), len(adj[x])))
        forbidden = {col[u] for u in adj[v] if u in col}
        for c in range(1, min(used + 1, best[0] - 1) + 1):
            if c in forbidden:
                continue
            col[v] = c
            search(col, max(used, c))
            del col[v]
            if best[0] == lower:
                return

    search({}, 0)
    return best[0]


def is_planar(g: SimpleGraph) -> bool:
    return nx.check_planarity(g.to_networkx())[0]


def complete_graph(n, prefix="v") -> SimpleGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return SimpleGraph(tuple(vs), frozenset(combinations(vs, 2)))
