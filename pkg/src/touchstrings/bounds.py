"""Color bounds per system class and per-instance audits of edge/degree bounds.

Everything is exact: ``e`` is handled through a shrinking rational enclosure
and the one bound involving a square root is compared after squaring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial
from typing import NamedTuple, Optional

from .arrangement import Arrangement, SystemProfile, profile
from .errors import BadParam
from .graphs import degeneracy_order, greedy_color, intersection_graph, string_multigraph

TAGS = ("general", "mu_intersecting", "contact_1int", "contact_1int_onesided",
        "contact_onesided", "segments", "two_touching")


def e_enclosure(terms: int) -> tuple:
    """Rational ``lo < e < hi`` from the first ``terms`` terms of sum 1/j!."""
    lo = sum(Fraction(1, factorial(j)) for j in range(terms))
    return lo, lo + Fraction(2, factorial(terms))


def compare_with_e(a: Fraction, b: Fraction) -> int:
    """Sign of ``a - b*e``.  Never 0 for rational a and nonzero rational b."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return (a > 0) - (a < 0)
    terms = 8
    while True:
        lo, hi = e_enclosure(terms)
        lo_be, hi_be = sorted((b * lo, b * hi))
        if a < lo_be:
            return -1
        if a > hi_be:
            return 1
        terms *= 2


def floor_times_e(q: Fraction) -> int:
    """floor(q * e), widening the enclosure until the floor is unambiguous."""
    q = Fraction(q)
    terms = 8
    while True:
        lo, hi = e_enclosure(terms)
        a, b = sorted((q * lo, q * hi))
        if a.__floor__() == b.__floor__():
            return a.__floor__()
        terms *= 2


@dataclass(frozen=True)
class SystemClass:
    tag: str
    k: int
    mu: Optional[int] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise BadParam(f"unknown class tag {self.tag!r}")
        if self.k < 2:
            raise BadParam("k must be at least 2")
        if self.tag == "two_touching" and self.k != 2:
            raise BadParam("two_touching means k = 2")
        if (self.tag == "mu_intersecting") != (self.mu is not None):
            raise BadParam("mu is required exactly for mu_intersecting")
        if self.mu is not None and self.mu < 1:
            raise BadParam("mu must be at least 1")


def _general(k):
    if k == 2:
        return 4
    b = floor_times_e(6 * k) + 1
    return min(b, 19) if k == 3 else b


def bound_candidates(cls: SystemClass) -> dict:
    """Every known color bound that applies to the class, keyed by formula."""
    k = cls.k
    out = {"general": _general(k)}
    tag = cls.tag
    if tag == "mu_intersecting":
        out["3mk"] = 3 * cls.mu * k
    # every 1-intersecting contact system is 1-intersecting
    if tag in ("contact_1int", "contact_1int_onesided", "segments"):
        out["3k"] = 3 * k
        out["4k/3+6"] = ceil(Fraction(4 * k, 3)) + 6
    if tag in ("contact_1int_onesided", "contact_onesided"):
        out["2k"] = 2 * k
    if tag == "contact_1int_onesided":
        out["4k/3+2"] = ceil(Fraction(4 * k, 3)) + 2
    if tag == "segments":
        out["k+5"] = k + 5
    if tag == "two_touching":
        out["planar"] = 4
    return out


def color_bound(cls: SystemClass) -> int:
    """Smallest known number of colors for every system in the class."""
    return min(bound_candidates(cls).values())


# First k from which the named formula is strictly the smallest candidate for
# good.  Below it the general bound (k = 2) or 3k (or a tie) decides.
CROSSOVERS = {
    "segments": ("k+5", 3),
    "contact_1int": ("4k/3+6", 5),
    "contact_1int_onesided": ("4k/3+2", 5),
}


def classify_system(arr: Arrangement, prof: Optional[SystemProfile] = None) -> SystemClass:
    """Tightest class tag describing an instance."""
    prof = prof or profile(arr)
    k = max(prof.k, 2)
    if k == 2:
        return SystemClass("two_touching", 2)
    if prof.is_contact_system:
        if is_segment_system(arr):
            return SystemClass("segments", k)
        if prof.is_1_intersecting:
            return SystemClass("contact_1int_onesided" if prof.is_one_sided else "contact_1int", k)
        if prof.is_one_sided:
            return SystemClass("contact_onesided", k)
    if prof.mu >= 1:
        return SystemClass("mu_intersecting", k, prof.mu)
    return SystemClass("general", k)


def is_segment_system(arr: Arrangement) -> bool:
    return arr.straight is not None and set(arr.walks) <= arr.straight


class AuditEntry(NamedTuple):
    bound: str
    applicable: bool
    holds: Optional[bool]
    lhs: Optional[Fraction]
    rhs: Optional[str]


@dataclass
class AuditReport:
    entries: list
    annotations: list = field(default_factory=list)

    @property
    def violations(self):
        return [e for e in self.entries if e.applicable and e.holds is False]

    @property
    def ok(self) -> bool:
        return not self.violations

    def get(self, bound) -> AuditEntry:
        for e in self.entries:
            if e.bound == bound:
                return e
        raise KeyError(bound)


def _sqrt22_bound_holds(m: int, n: int) -> bool:
    # m <= (6/7)(6 + sqrt 22) n  <=>  7m - 36n <= 6 n sqrt 22
    lhs = 7 * m - 36 * n
    return lhs <= 0 or lhs * lhs <= 792 * n * n


def audit_instance(arr: Arrangement) -> AuditReport:
    prof = profile(arr)
    g = intersection_graph(arr)
    n, m, k = g.n, g.m, prof.k
    keff = max(k, 1)
    entries = []

    def add(name, applicable, holds=None, lhs=None, rhs=None):
        entries.append(AuditEntry(name, applicable,
                                  holds if applicable else None,
                                  Fraction(lhs) if applicable and lhs is not None else None,
                                  rhs if applicable else None))

    add("edges_3ekn", n >= 1, n >= 1 and compare_with_e(m, 3 * keff * n) < 0,
        m, f"3e*{keff}*{n}")
    add("edges_k3", n >= 1 and k <= 3, _sqrt22_bound_holds(m, n), m, f"(6/7)(6+sqrt22)*{n}")
    mg = string_multigraph(arr)
    me = mg.edge_count
    add("multiedges", prof.mu >= 1, 2 * me < 3 * prof.mu * k * n, me, f"3/2*{prof.mu}*{k}*{n}")
    deg = degeneracy_order(g)
    mind = g.min_degree() if n else 0
    add("degeneracy_6ek", n >= 1, compare_with_e(deg.degeneracy, 6 * keff) < 0,
        deg.degeneracy, f"6e*{keff}")
    c1 = prof.is_contact_system and prof.is_1_intersecting and n >= 1
    lim = ceil(Fraction(4 * keff, 3)) + 5
    add("mindeg_contact_1int", c1, mind <= lim, mind, str(lim))
    add("degeneracy_contact_1int", c1, deg.degeneracy <= lim, deg.degeneracy, str(lim))
    seg = prof.is_contact_system and is_segment_system(arr) and n >= 1
    add("mindeg_segments", seg, mind <= k + 4, mind, str(k + 4))
    add("degeneracy_segments", seg, deg.degeneracy <= k + 4, deg.degeneracy, str(k + 4))
    colors = greedy_color(g, deg.order).colors_used if n else 0
    add("greedy_segments", seg, colors <= k + 5, colors, str(k + 5))
    notes = [
        "open: the constant 6e in the edge bound may improve to some c in [4.5, 6e]",
    ]
    if prof.is_contact_system and prof.is_1_intersecting:
        notes.append("open: 1-intersecting contact systems may be (k+c)-colorable for a constant c")
    return AuditReport(entries, notes)
