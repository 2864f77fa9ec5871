"""Dependent random choice for (d+1)-uniform hypergraphs, in exact arithmetic.

A vertex v and a d-set T are neighbors when some edge is T + {v} (v not in
T). N(v) is the set of d-sets that are neighbors of v, and N(S) the d-sets
that are neighbors of every vertex of S.

The random experiment draws an ordered t-tuple of d-sets uniformly with
repetition, lets B be the vertices adjacent to all of them, and counts
X = |B| and Y = the number of r-subsets S of B with |N(S)| < x. All
expectations are :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import ArityTooSmall
from .hypercore import Hypergraph, all_hypergraphs


@dataclass(frozen=True)
class DrcInstance:
    G: Hypergraph
    t: int
    r: int
    x: int
    a: Fraction | int = 0

    def __post_init__(self):
        if self.G.d < 2:
            raise ArityTooSmall("dependent random choice needs edges of size >= 2")
        if self.t < 1 or self.r < 1 or self.x < 0:
            raise ValueError("need t >= 1, r >= 1, x >= 0")
        object.__setattr__(self, "a", Fraction(self.a))

    @property
    def n(self) -> int:
        return self.G.n

    @property
    def m(self) -> int:
        return self.G.m

    @property
    def d(self) -> int:
        return self.G.d - 1

    @property
    def universe(self) -> int:
        """C(n, d), the number of d-sets."""
        return comb(self.n, self.d)

    def to_record(self) -> dict:
        return {"G": self.G.to_record(), "t": self.t, "r": self.r, "x": self.x, "a": str(self.a)}


def neighbor_sets(G: Hypergraph) -> dict[int, frozenset[tuple[int, ...]]]:
    if G.d < 2:
        raise ArityTooSmall("neighbor sets need edges of size >= 2")
    out: dict[int, set] = {v: set() for v in range(G.n)}
    for e in G.edges:
        for v in e:
            out[v].add(tuple(u for u in e if u != v))
    return {v: frozenset(s) for v, s in out.items()}


def common_neighbors(N: dict[int, frozenset], S: Iterable[int], G: Hypergraph | None = None):
    """N(S); for empty S every d-set is a common neighbor (needs ``G``)."""
    S = list(S)
    if not S:
        if G is None:
            raise ValueError("N of the empty set needs the hypergraph")
        return frozenset(itertools.combinations(range(G.n), G.d - 1))
    res = N[S[0]]
    for v in S[1:]:
        res = res & N[v]
    return res


class _Masks:
    """N(v) as bitmasks over the d-sets of 0..n-1 in lexicographic order."""

    def __init__(self, G: Hypergraph):
        d = G.d - 1
        self.dsets = list(itertools.combinations(range(G.n), d))
        index = {T: i for i, T in enumerate(self.dsets)}
        self.nv = [0] * G.n
        for v, Ts in neighbor_sets(G).items():
            for T in Ts:
                self.nv[v] |= 1 << index[T]

    def ns(self, S) -> int:
        m = -1
        for v in S:
            m &= self.nv[v]
        return m

    def common_size(self, S) -> int:
        return self.ns(S).bit_count()


@dataclass(frozen=True)
class Expectation:
    value: Fraction
    bound: Fraction
    holds: bool

    def to_record(self) -> dict:
        return {"value": str(self.value), "bound": str(self.bound), "holds": self.holds}


def x_lower_bound(inst: DrcInstance) -> Fraction:
    """n C(n,d)^(-t) (m/n)^t."""
    if inst.n == 0:
        return Fraction(0)
    return inst.n * Fraction(inst.m, inst.n * inst.universe) ** inst.t


def y_upper_bound(inst: DrcInstance) -> Fraction:
    """C(n,r) (x / C(n,d))^t."""
    return comb(inst.n, inst.r) * Fraction(inst.x, inst.universe) ** inst.t


def hypothesis_lhs(inst: DrcInstance) -> Fraction:
    return x_lower_bound(inst) - y_upper_bound(inst)


def hypothesis_holds(inst: DrcInstance) -> bool:
    return hypothesis_lhs(inst) >= inst.a


def exact_expectation_X(inst: DrcInstance) -> Expectation:
    """E[X] = sum_v (|N(v)| / C(n,d))^t, against the convexity lower bound."""
    sizes = [len(s) for s in neighbor_sets(inst.G).values()]
    value = sum((Fraction(s, inst.universe) ** inst.t for s in sizes), Fraction(0))
    lower = x_lower_bound(inst)
    return Expectation(value, lower, value >= lower)


def exact_expectation_Y(inst: DrcInstance) -> Fraction:
    """sum over r-sets S with |N(S)| < x of (|N(S)| / C(n,d))^t."""
    M = _Masks(inst.G)
    C = inst.universe
    total = Fraction(0)
    for S in itertools.combinations(range(inst.n), inst.r):
        c = M.common_size(S)
        if c < inst.x:
            total += Fraction(c, C) ** inst.t
    return total


def bound_EY(inst: DrcInstance) -> Expectation:
    value = exact_expectation_Y(inst)
    bound = y_upper_bound(inst)
    return Expectation(value, bound, value <= bound)


@dataclass(frozen=True)
class Enumerated:
    EX: Fraction
    EY: Fraction
    EXY: Fraction
    choices: int


def enumerate_expectations(inst: DrcInstance) -> Enumerated:
    """Average X, Y and X - Y over every ordered t-tuple of d-sets, straight
    from the set definitions."""
    N = neighbor_sets(inst.G)
    dsets = list(itertools.combinations(range(inst.n), inst.d))
    sx = sy = 0
    count = 0
    for T in itertools.product(dsets, repeat=inst.t):
        wanted = set(T)
        B = [v for v in range(inst.n) if wanted <= N[v]]
        y = sum(1 for S in itertools.combinations(B, inst.r)
                if len(common_neighbors(N, S)) < inst.x)
        sx += len(B)
        sy += y
        count += 1
    return Enumerated(Fraction(sx, count), Fraction(sy, count), Fraction(sx - sy, count), count)


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------


def _clean(M: _Masks, B: list[int], r: int, x: int) -> tuple[list[int], int]:
    """Drop the highest vertex of the lexicographically first bad r-subset
    until no r-subset has fewer than x common neighbors."""
    A = list(B)
    removed = 0
    while True:
        bad = next((S for S in itertools.combinations(A, r) if M.common_size(S) < x), None)
        if bad is None:
            return A, removed
        A.remove(bad[-1])
        removed += 1


@dataclass
class DrcWitness:
    A: tuple[int, ...]
    T: tuple[int, ...]
    X: int
    Y: int
    removed: int
    exhaustive: bool
    samples: int
    seed: int | None
    lhs: Fraction
    hypothesis: bool

    a_target: Fraction = field(default=Fraction(0))

    @property
    def guarantee_ok(self) -> bool:
        """False only when the hypothesis holds and |A| < a."""
        return not self.hypothesis or len(self.A) >= self.a_target

    def to_record(self) -> dict:
        return {
            "A": list(self.A), "T": list(self.T), "X": self.X, "Y": self.Y,
            "removed": self.removed, "exhaustive": self.exhaustive, "samples": self.samples,
            "seed": self.seed, "lhs": str(self.lhs), "a": str(self.a_target),
            "hypothesis": self.hypothesis, "guarantee_ok": self.guarantee_ok,
        }


def drc_witness(inst: DrcInstance, budget: int = 10**6, seed: int | None = None) -> DrcWitness:
    """Largest cleaned set A over the choices of T (as multisets of d-set
    indices; order does not change B). Exhaustive when the number of
    multisets is within ``budget``, otherwise ``budget`` seeded random
    draws. T is reported as d-set indices in lexicographic order."""
    M = _Masks(inst.G)
    C = len(M.dsets)
    total = comb(C + inst.t - 1, inst.t)
    if total <= budget:
        choices: Iterable = itertools.combinations_with_replacement(range(C), inst.t)
        exhaustive, samples = True, total
    else:
        rng = random.Random(seed)
        choices = (tuple(sorted(rng.randrange(C) for _ in range(inst.t))) for _ in range(budget))
        exhaustive, samples = False, budget
    best = None
    for T in choices:
        tmask = 0
        for i in T:
            tmask |= 1 << i
        B = [v for v in range(inst.n) if M.nv[v] & tmask == tmask]
        y = sum(1 for S in itertools.combinations(B, inst.r) if M.common_size(S) < inst.x)
        A, removed = _clean(M, B, inst.r, inst.x)
        if best is None or len(A) > len(best[0]):
            best = (A, T, len(B), y, removed)
    A, T, X, Y, removed = best if best is not None else ([], (), 0, 0, 0)
    lhs = hypothesis_lhs(inst)
    return DrcWitness(tuple(A), tuple(T), X, Y, removed, exhaustive, samples,
                      None if exhaustive else seed, lhs, lhs >= inst.a, a_target=inst.a)


def is_good_set(G: Hypergraph, A: Iterable[int], r: int, x: int) -> bool:
    """Every r-subset of A has at least x common neighbors (set definition)."""
    N = neighbor_sets(G)
    return all(len(common_neighbors(N, S)) >= x for S in itertools.combinations(sorted(A), r))


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    instances: int = 0
    hypothesis_instances: int = 0
    oracle_checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_record(self) -> dict:
        return {
            "instances": self.instances,
            "hypothesis_instances": self.hypothesis_instances,
            "oracle_checked": self.oracle_checked,
            "violations": self.violations,
            "passed": self.passed,
        }


def check_instance(inst: DrcInstance, oracle_limit: int = 10**6, report: SweepReport | None = None):
    """Run every per-instance check and append violations to ``report``."""
    report = report if report is not None else SweepReport()
    report.instances += 1
    where = {"G": inst.G.to_record(), "t": inst.t, "r": inst.r, "x": inst.x, "a": str(inst.a)}
    ex = exact_expectation_X(inst)
    ey = bound_EY(inst)
    if not ex.holds:
        report.violations.append({**where, "check": "convexity"})
    if not ey.holds:
        report.violations.append({**where, "check": "EY_bound"})
    if inst.universe ** inst.t <= oracle_limit:
        en = enumerate_expectations(inst)
        report.oracle_checked += 1
        if (en.EX, en.EY, en.EXY) != (ex.value, ey.value, ex.value - ey.value):
            report.violations.append({**where, "check": "oracle"})
    if hypothesis_holds(inst):
        if inst.a > 0:
            report.hypothesis_instances += 1
        w = drc_witness(inst)
        if len(w.A) < inst.a:
            report.violations.append({**where, "check": "witness_size", "A": list(w.A)})
        if w.removed > w.Y:
            report.violations.append({**where, "check": "cleaning"})
        if not is_good_set(inst.G, w.A, inst.r, inst.x):
            report.violations.append({**where, "check": "witness_quality", "A": list(w.A)})
    return report


def sweep_instances(n: int, uniformity: int = 3, max_edges: int | None = None,
                    ts=(1, 2), rs=(1, 2, 3), xs=None, sample: int | None = None,
                    seed: int = 0):
    """Yield instances over all hypergraphs on n vertices (up to max_edges
    edges). The target a is the hypothesis left side itself, the largest
    value for which the hypothesis holds. With ``sample`` a seeded subset of
    that many instances is drawn instead."""
    C = comb(n, uniformity - 1)
    xs = range(C + 2) if xs is None else xs
    combos = [(G, t, r, x) for G in all_hypergraphs(n, uniformity, max_edges)
              for t in ts for r in rs for x in xs]
    if sample is not None and sample < len(combos):
        combos = random.Random(seed).sample(combos, sample)
    for G, t, r, x in combos:
        base = DrcInstance(G, t, r, x)
        yield DrcInstance(G, t, r, x, hypothesis_lhs(base))


def drc_sweep(n: int, uniformity: int = 3, max_edges: int | None = None, ts=(1, 2),
              rs=(1, 2, 3), xs=None, sample: int | None = None, seed: int = 0,
              oracle_limit: int = 10**6) -> SweepReport:
    report = SweepReport()
    for inst in sweep_instances(n, uniformity, max_edges, ts, rs, xs, sample, seed):
        check_instance(inst, oracle_limit, report)
    return report
