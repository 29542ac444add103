"""Editable form of an arrangement for local rewrites.

Branches are keyed by ``(string, neighbour)`` where the neighbour is the next
node along the string in that direction, or a free-end marker
``("end", string, 0|1)``.  Walk indices are recomputed on conversion back,
so rewrites never renumber anything by hand.
"""
from __future__ import annotations

from itertools import count

from .arrangement import END, Arrangement, Branch


def free(s, side):
    return ("end", s, side)


class Editable:
    def __init__(self, arr: Arrangement):
        self.walks = {s: list(w.nodes) for s, w in arr.walks.items()}
        self.free = {s: (w.start_free, w.end_free) for s, w in arr.walks.items()}
        self.rot = {nid: [self.key(arr, b) for b in r] for nid, r in arr.nodes.items()}
        self._fresh = count(1)

    # -- conversions --------------------------------------------------------

    def ext(self, s):
        sf, ef = self.free[s]
        return ([free(s, 0)] if sf else []) + self.walks[s] + ([free(s, 1)] if ef else [])

    def key(self, arr: Arrangement, b: Branch):
        """``(string, neighbour)`` for a branch of ``arr``."""
        d = arr.dart_of(b)
        return (b.string, self._exts_of(arr, b.string)[d[1] + 1 if d[2] == 1 else d[1]])

    @staticmethod
    def _exts_of(arr, s):
        return arr._exts[s]

    @staticmethod
    def dart_key(arr: Arrangement, d):
        """``(string, tail, head)`` for a dart of ``arr``."""
        return (d[0], arr.tail(d), arr.head(d))

    def branch(self, nid, key) -> Branch:
        s, nb = key
        w = self.walks[s]
        i = w.index(nid)
        e = self.ext(s)
        j = e.index(nid)
        if len(e) == 1 or not (0 < j < len(e) - 1):
            return Branch(s, i, END)
        return Branch(s, i, "+" if e[j + 1] == nb else "-")

    def to_arrangement(self, outer_dart=None) -> Arrangement:
        nodes = {nid: [self.branch(nid, k) for k in r] for nid, r in self.rot.items()}
        walks = {s: (w, *self.free[s]) for s, w in self.walks.items()}
        arr = Arrangement(nodes, walks)
        if outer_dart is None:
            return arr
        d = self.find_dart(arr, outer_dart)
        return arr.with_outer((arr.witness_for_dart(d),))

    @staticmethod
    def find_dart(arr: Arrangement, key):
        s, tail, head = key
        e = arr._exts[s]
        i, j = e.index(tail), e.index(head)
        return (s, min(i, j), 1 if j == i + 1 else -1)

    # -- edits ----------------------------------------------------------------

    def fresh(self, prefix="q"):
        while True:
            nid = f"{prefix}{next(self._fresh)}"
            if nid not in self.rot:
                return nid

    def retarget(self, nid, s, old, new):
        """At node ``nid`` the branch of ``s`` toward ``old`` now points to ``new``."""
        if isinstance(nid, tuple):
            return
        r = self.rot[nid]
        r[r.index((s, old))] = (s, new)

    def subdivide(self, s, u, v, z):
        """Put a new node ``z`` on the edge of ``s`` between ``u`` and ``v``.

        Rotation of ``z`` is left empty for the caller to fill in.
        """
        e = self.ext(s)
        i, j = e.index(u), e.index(v)
        assert abs(i - j) == 1, "not an edge"
        lo, hi = min(i, j), max(i, j)
        sf = self.free[s][0]
        self.walks[s].insert(hi - (1 if sf else 0), z)
        self.retarget(u, s, v, z)
        self.retarget(v, s, u, z)
        self.rot.setdefault(z, [])

    def nodes_of(self, s):
        return self.walks[s]


def remap_dart(key, gone, replacement):
    """Dart ``(s, tail, head)`` rewritten when ``gone`` nodes were replaced.

    ``replacement(s, tail)`` gives the node of ``s`` now adjacent to ``tail``.
    """
    s, tail, head = key
    if head in gone:
        head = replacement(s, tail)
    return (s, tail, head)
