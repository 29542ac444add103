"""Exact linear programs bounding the edge count of contact systems.

Variables ``p_i`` / ``f_i`` (i = 2..k) count peaks and flat points of
multiplicity ``i``.  Every program has one equality (string ends are counted
twice) and one inequality (an Euler-type face bound), and maximizes the edge
count of the intersection graph.  With two constraints every basic solution is
supported on at most two columns, so the optimum is found by enumerating all
2x2 bases in exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, floor
from typing import NamedTuple

from .errors import BadParam, Infeasible

VARIANTS = ("LP1", "LP2", "LP3")
SLACK = "slack"


def _norm_variant(variant) -> str:
    v = str(variant).upper()
    if not v.startswith("LP"):
        v = "LP" + v
    if v not in VARIANTS:
        raise BadParam(f"unknown LP variant {variant!r}")
    return v


@dataclass(frozen=True)
class LPInstance:
    """One program.  ``rhs_constant=False`` drops the additive constant of the
    inequality (the scale-free relaxation used when the bound is read per string).
    """
    variant: str
    k: int
    n: Fraction = Fraction(1)
    rhs_constant: bool = True

    def __post_init__(self):
        object.__setattr__(self, "variant", _norm_variant(self.variant))
        object.__setattr__(self, "n", Fraction(self.n))
        if self.k < 3:
            raise BadParam("k must be at least 3")
        if self.n <= 0:
            raise BadParam("n must be positive")

    @property
    def variables(self):
        return [f"p{i}" for i in range(2, self.k + 1)] + [f"f{i}" for i in range(2, self.k + 1)]

    def eq_coef(self, var) -> int:
        i = int(var[1:])
        return i if var[0] == "p" else i - 1

    def ineq_coef(self, var) -> int:
        i = int(var[1:])
        v = self.variant
        if var[0] == "p":
            return i - 4 if v == "LP3" else i - 6
        c = i - 3 if v == "LP2" else i - 5
        if v in ("LP1", "LP3") and i == 2:
            c += 2
        return c

    @property
    def ineq_rhs(self) -> int:
        if not self.rhs_constant:
            return 0
        return -6 if self.variant == "LP3" else -12

    def objective(self, var) -> int:
        return comb(int(var[1:]), 2)

    def value(self, x: dict) -> Fraction:
        return sum((self.objective(v) * q for v, q in x.items() if v != SLACK), Fraction(0))

    def is_feasible(self, x: dict) -> bool:
        if any(x.get(v, 0) < 0 for v in self.variables):
            return False
        eq = sum(self.eq_coef(v) * x.get(v, 0) for v in self.variables)
        iq = sum(self.ineq_coef(v) * x.get(v, 0) for v in self.variables)
        return eq == 2 * self.n and iq <= self.ineq_rhs


class LPSolution(NamedTuple):
    optimum: Fraction
    optimal_vertices: list  # dicts of nonzero variables


def basic_solutions(lp: LPInstance):
    """Every basic feasible solution, as ``{var: value}`` including the slack."""
    cols = lp.variables + [SLACK]
    a = {v: lp.eq_coef(v) for v in lp.variables}
    b = {v: lp.ineq_coef(v) for v in lp.variables}
    a[SLACK], b[SLACK] = 0, 1
    # integer right-hand sides; the common denominator goes into det
    den = lp.n.denominator
    r1, r2 = 2 * lp.n.numerator, lp.ineq_rhs * den
    seen = set()
    out = []
    for u, v in combinations(cols, 2):
        det = a[u] * b[v] - a[v] * b[u]
        if det == 0:
            continue
        nu = r1 * b[v] - a[v] * r2
        nv = a[u] * r2 - r1 * b[u]
        # sign test before dividing
        if (nu < 0 < det or det < 0 < nu) or (nv < 0 < det or det < 0 < nv):
            continue
        sol = {w: Fraction(x, det * den) for w, x in ((u, nu), (v, nv)) if x != 0}
        key = frozenset(sol.items())
        if key not in seen:
            seen.add(key)
            out.append(sol)
    return out


def lp_solve(variant, k, n=1, rhs_constant=True) -> LPSolution:
    lp = LPInstance(variant, k, n, rhs_constant)
    bfs = basic_solutions(lp)
    if not bfs:
        raise Infeasible(f"{lp.variant} with k={k}, n={n} has no feasible point")
    vals = [lp.value(x) for x in bfs]
    best = max(vals)
    uniq = {}
    for s, val in zip(bfs, vals):
        if val == best:
            x = {v: q for v, q in s.items() if v != SLACK}
            uniq.setdefault(frozenset(x.items()), x)
    order = {v: i for i, v in enumerate(lp.variables)}
    opt = sorted(uniq.values(), key=lambda x: sorted(order[v] for v in x))
    return LPSolution(best, opt)


class ClaimResult(NamedTuple):
    name: str
    status: str  # holds | fails | vacuous | infeasible
    witness: dict | None = None


@dataclass
class ClaimReport:
    variant: str
    k: int
    n: Fraction
    rhs_constant: bool
    solution: LPSolution | None
    results: list

    @property
    def ok(self) -> bool:
        return all(r.status in ("holds", "vacuous") for r in self.results)

    def status(self, name) -> str:
        for r in self.results:
            if r.name == name:
                return r.status
        raise KeyError(name)


def _all_zero(vertices, names):
    for x in vertices:
        if any(x.get(v, 0) != 0 for v in names):
            return x
    return None


def claim_names(variant):
    v = _norm_variant(variant)
    common = ["f2_zero", "f_mid_zero"]
    if v == "LP1":
        return common + ["p_mid_zero", "bound"]
    if v == "LP2":
        return common + ["p_mid_zero", "f3_zero_some", "bound"]
    return common + ["p_all_zero", "support", "bound"]


def lp_verify_claims(variant, k, n=1, rhs_constant=True) -> ClaimReport:
    """Check the zero patterns of all optimal vertices plus the per-string bound.

    Bounds are read per string: ``m*/n``.  A program without feasible points
    reports every claim as ``infeasible``.
    """
    lp = LPInstance(variant, k, n, rhs_constant)
    v = lp.variant
    names = claim_names(v)
    try:
        sol = lp_solve(v, k, lp.n, rhs_constant)
    except Infeasible:
        return ClaimReport(v, k, lp.n, rhs_constant, None,
                           [ClaimResult(c, "infeasible") for c in names])
    verts = sol.optimal_vertices
    results = []

    def zero_claim(name, vars_):
        if not vars_:
            results.append(ClaimResult(name, "vacuous"))
            return
        bad = _all_zero(verts, vars_)
        results.append(ClaimResult(name, "holds" if bad is None else "fails", bad))

    zero_claim("f2_zero", ["f2"])
    zero_claim("f_mid_zero", [f"f{i}" for i in range(4, k)])
    if v in ("LP1", "LP2"):
        zero_claim("p_mid_zero", [f"p{i}" for i in range(3, k)])
    else:
        zero_claim("p_all_zero", [f"p{i}" for i in range(2, k + 1)])
        allowed = {"f3", f"f{k}"}
        bad = next((x for x in verts if not set(x) <= allowed), None)
        results.append(ClaimResult("support", "holds" if bad is None else "fails", bad))
    if v == "LP2":
        ok = any(x.get("f3", 0) == 0 for x in verts)
        results.append(ClaimResult("f3_zero_some", "holds" if ok else "fails",
                                   None if ok else verts[0]))
    per = sol.optimum / lp.n
    if v == "LP1":
        good = per < Fraction(2 * k, 3) + 3
    elif v == "LP3":
        good = per < Fraction(k + 5, 2)
    else:
        good = floor(2 * per) <= ceil(Fraction(4 * k, 3)) + 1
    results.append(ClaimResult("bound", "holds" if good else "fails",
                               None if good else {"m*/n": per}))
    return ClaimReport(v, k, lp.n, rhs_constant, sol, results)
