"""Exact Turán numbers ex_d(n, H) and letter counts f_d(n, k, H).

Both are computed by include-first branch and bound over the d-subsets of
``0..n-1``. Each time an edge is added, the containment check is anchored at
that edge, so only copies of H through the new edge are searched for.

Reduction used by :func:`f_exact`
---------------------------------
For a fixed H-free ordered hypergraph G, let top(v) be the number of edges of
G whose greatest vertex is v. Letters group edges with a common greatest
vertex, so a lettering with every letter used at least k times has at most
``sum_v floor(top(v) / k)`` letters. That many is achieved by cutting each
group into blocks of exactly k and deleting the leftovers, and deleting edges
keeps G H-free. Hence

    f_d(n, k, H) = max over H-free G of  sum_v floor(top_G(v) / k),

which is a finite search over edge sets with no labeling choices left.
Occurrences beyond k never add a letter, so blocks of exactly k suffice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import partial

from .errors import BudgetExceeded
from .hypercore import Hypergraph, Pattern, edge_mask
from .lettering import letter_transform
from .records import ExtremalRecord, ResultCache
from .search import Problem, SearchLimits, branch_and_bound


class _EdgeProblem(Problem):
    def __init__(self, n: int, d: int, H: Hypergraph, items):
        self.n, self.d = n, d
        self.items = items
        self.size = len(items)
        self.masks = [edge_mask(e) for e in items]
        self.pattern = Pattern(H)
        self.edges: set[int] = set()
        self.degs = [0] * n
        self.stack: list[int] = []

    def try_add(self, i):
        e = self.items[i]
        self.edges.add(self.masks[i])
        for v in e:
            self.degs[v] += 1
        if self.pattern.find(self.n, self.edges, self.degs, anchor=e) is not None:
            self._drop(i)
            return False
        self.stack.append(i)
        self._added(i)
        return True

    def _drop(self, i):
        self.edges.discard(self.masks[i])
        for v in self.items[i]:
            self.degs[v] -= 1

    def remove(self, i):
        self.stack.pop()
        self._drop(i)
        self._removed(i)

    def _added(self, i):
        pass

    def _removed(self, i):
        pass

    def chosen(self):
        return tuple(sorted(self.stack))


class _ExProblem(_EdgeProblem):
    def __init__(self, n, d, H):
        super().__init__(n, d, H, list(itertools.combinations(range(n), d)))

    def prepare(self):
        # any nonempty H-free hypergraph can be relabeled to contain {0..d-1}
        if self.size and self.try_add(0):
            return 1
        return 0

    def bound(self, i):
        return len(self.stack) + self.size - i

    def value(self):
        return len(self.stack)


class _FProblem(_EdgeProblem):
    def __init__(self, n, d, H, k):
        items = sorted(itertools.combinations(range(n), d), key=lambda e: (e[-1], e))
        super().__init__(n, d, H, items)
        self.k = k
        self.top = [0] * n
        self.total = 0
        self.group_end = [0] * self.size
        group_size = [0] * n
        for e in items:
            group_size[e[-1]] += 1
        end = 0
        for v in range(n):
            end += group_size[v]
            for i in range(end - group_size[v], end):
                self.group_end[i] = end
        self.later = [0] * (n + 1)
        for v in range(n - 1, -1, -1):
            self.later[v] = self.later[v + 1] + group_size[v] // k

    def _added(self, i):
        v = self.items[i][-1]
        before = self.top[v] // self.k
        self.top[v] += 1
        self.total += self.top[v] // self.k - before

    def _removed(self, i):
        v = self.items[i][-1]
        before = self.top[v] // self.k
        self.top[v] -= 1
        self.total += self.top[v] // self.k - before

    def bound(self, i):
        if i >= self.size:
            return self.total
        v = self.items[i][-1]
        k = self.k
        cur = self.top[v]
        return self.total - cur // k + (cur + self.group_end[i] - i) // k + self.later[v + 1]

    def value(self):
        return self.total


def _finish(rec: ExtremalRecord, strict: bool) -> ExtremalRecord:
    if strict and not rec.exact:
        raise BudgetExceeded(f"{rec.kind} search for n={rec.n} exceeded its budget", rec)
    return rec


def ex_exact(n: int, H: Hypergraph, limits: SearchLimits | None = None,
             cache: ResultCache | None = None, strict: bool = False) -> ExtremalRecord:
    """Maximum number of edges of an H-free H.d-uniform hypergraph on n vertices.

    If the budget runs out the record has ``exact=False`` and its value is
    the best lower bound found; ``strict=True`` raises BudgetExceeded instead.
    """
    if H.m < 1:
        raise ValueError("forbidden hypergraph needs at least one edge")
    if cache is not None:
        hit = cache.load("ex_hypergraph", n, H.d, None, H)
        if hit is not None and hit.exact:
            return hit
    res = branch_and_bound(partial(_ExProblem, n, H.d, H), limits)
    universe = list(itertools.combinations(range(n), H.d))
    witness = Hypergraph(n, H.d, tuple(universe[i] for i in res.chosen))
    rec = ExtremalRecord("ex_hypergraph", n, H.d, None, H, res.value, witness,
                         res.exact, res.nodes, res.seconds)
    if cache is not None and rec.exact:
        cache.store(rec)
    return _finish(rec, strict)


def f_exact(n: int, k: int, H: Hypergraph, limits: SearchLimits | None = None,
            cache: ResultCache | None = None, strict: bool = False) -> ExtremalRecord:
    """Maximum number of letters in an H-free lettered hypergraph on n
    vertices whose letters all occur at least k times."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if H.m < 1:
        raise ValueError("forbidden hypergraph needs at least one edge")
    if cache is not None:
        hit = cache.load("f_lettered", n, H.d, k, H)
        if hit is not None and hit.exact:
            return hit
    factory = partial(_FProblem, n, H.d, H, k)
    res = branch_and_bound(factory, limits)
    items = factory().items
    base = Hypergraph(n, H.d, tuple(items[i] for i in res.chosen))
    witness = letter_transform(base, k)
    rec = ExtremalRecord("f_lettered", n, H.d, k, H, res.value, witness,
                         res.exact, res.nodes, res.seconds)
    if cache is not None and rec.exact:
        cache.store(rec)
    return _finish(rec, strict)


@dataclass
class Lemma1Report:
    n: int
    k: int
    d: int
    ex_value: int
    f_value: int
    rhs: int
    holds: bool
    transform_letters: int
    transform_ok: bool

    @property
    def passed(self) -> bool:
        return self.holds and self.transform_ok

    def to_record(self) -> dict:
        return {
            "n": self.n, "k": self.k, "d": self.d,
            "ex_value": self.ex_value, "f_value": self.f_value,
            "rhs": self.rhs, "holds": self.holds,
            "transform_letters": self.transform_letters,
            "transform_ok": self.transform_ok, "passed": self.passed,
        }


def verify_lemma1(n: int, k: int, H: Hypergraph, limits: SearchLimits | None = None,
                  cache: ResultCache | None = None) -> Lemma1Report:
    """Check ex_d(n,H) <= k (f_d(n,k,H) + n) with both sides exact, and that
    the greedy lettering of an extremal witness uses at most f letters."""
    ex = ex_exact(n, H, limits, cache, strict=True)
    f = f_exact(n, k, H, limits, cache, strict=True)
    rhs = k * (f.value + n)
    L = letter_transform(ex.witness, k)
    return Lemma1Report(n, k, H.d, ex.value, f.value, rhs, ex.value <= rhs, L.r, L.r <= f.value)
