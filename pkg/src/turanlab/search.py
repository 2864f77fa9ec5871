"""Include/exclude branch and bound over an ordered item universe.

A problem exposes a mutable state over items ``0..size-1`` (edges, cells):
``try_add``/``remove`` toggle an item, ``bound(i)`` is an upper bound on any
completion once items ``< i`` are decided, ``value()`` scores the current
state. Items are tried "include first", so good incumbents appear early.

Parallel mode splits the top of the tree into prefix tasks that run in worker
processes and share a monotone incumbent. Only the value is guaranteed to be
schedule independent; the witness is recomputed afterwards by a sequential
pass that stops at the first state reaching the known optimum, so the
published witness is deterministic as well.
"""

from __future__ import annotations

import multiprocessing as mp
import sys
import time
from dataclasses import dataclass
from typing import Callable

STATS_EVERY = 256


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int | None = None
    max_seconds: float | None = None
    workers: int = 1


@dataclass
class SearchResult:
    value: int
    chosen: tuple[int, ...]
    exact: bool
    nodes: int
    seconds: float


class Problem:
    size: int

    def prepare(self) -> int:
        """Apply root-level forced decisions; return the first free item."""
        return 0

    def try_add(self, i: int) -> bool:
        raise NotImplementedError

    def remove(self, i: int) -> None:
        raise NotImplementedError

    def bound(self, i: int) -> int:
        raise NotImplementedError

    def value(self) -> int:
        raise NotImplementedError

    def chosen(self) -> tuple[int, ...]:
        raise NotImplementedError


class _Stop(Exception):
    pass


class _Found(Exception):
    pass


class _Runner:
    def __init__(self, problem: Problem, limits: SearchLimits, best: int = -1,
                 stop_at: int | None = None, shared=None):
        self.P = problem
        self.best = best
        self.best_items: tuple[int, ...] | None = None
        self.stop_at = stop_at
        self.nodes = 0
        self.limits = limits
        self.deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds
        self.shared = shared
        self.exhausted = False

    def _sync(self):
        if self.shared is not None:
            inc, lock, counter = self.shared
            with lock:
                counter.value += STATS_EVERY
                total = counter.value
                if inc.value > self.best:
                    self.best = inc.value
        else:
            total = self.nodes
        if self.limits.max_nodes is not None and total > self.limits.max_nodes:
            raise _Stop
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Stop

    def _publish(self):
        if self.shared is not None:
            inc, lock, _ = self.shared
            with lock:
                if self.best > inc.value:
                    inc.value = self.best

    def dfs(self, i: int):
        P = self.P
        self.nodes += 1
        if self.nodes % STATS_EVERY == 0:
            self._sync()
        if P.bound(i) <= self.best:
            return
        if i == P.size:
            self.best = P.value()
            self.best_items = P.chosen()
            self._publish()
            if self.stop_at is not None and self.best >= self.stop_at:
                raise _Found
            return
        if P.try_add(i):
            self.dfs(i + 1)
            P.remove(i)
        self.dfs(i + 1)

    def run(self, start: int):
        try:
            self.dfs(start)
            self.exhausted = True
        except _Found:
            self.exhausted = True
        except _Stop:
            self.exhausted = False


def _ensure_recursion(depth: int):
    need = depth * 2 + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def branch_and_bound(factory: Callable[[], Problem], limits: SearchLimits | None = None,
                     target: int | None = None) -> SearchResult:
    """Maximize the problem built by ``factory``.

    With ``target`` the search only looks for a state of value >= target and
    stops at the first one (used for deterministic witness recovery).
    """
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    if limits.workers > 1 and target is None:
        res = _parallel(factory, limits)
        res.seconds = time.perf_counter() - t0
        return res
    P = factory()
    _ensure_recursion(P.size)
    start = P.prepare()
    best = -1 if target is None else target - 1
    runner = _Runner(P, limits, best=best, stop_at=target)
    runner.run(start)
    if runner.best_items is None:
        # nothing beat the initial threshold; the empty state is the answer
        value, items = (P.value(), P.chosen()) if target is None else (-1, ())
    else:
        value, items = runner.best, runner.best_items
    return SearchResult(value, items, runner.exhausted, runner.nodes, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# parallel split
# ---------------------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(factory, limits, inc, lock, counter):
    _WORKER.update(factory=factory, limits=limits, shared=(inc, lock, counter))


def _run_prefix(task):
    start, includes = task
    P = _WORKER["factory"]()
    _ensure_recursion(P.size)
    P.prepare()
    for i in includes:
        if not P.try_add(i):
            return -1, None, 0, True
    runner = _Runner(P, _WORKER["limits"], best=_WORKER["shared"][0].value,
                     shared=_WORKER["shared"])
    runner.run(start)
    return runner.best, runner.best_items, runner.nodes, runner.exhausted


def _prefixes(factory, depth: int):
    """Feasible include/exclude assignments of the first ``depth`` free items."""
    P = factory()
    start = P.prepare()
    end = min(P.size, start + depth)
    out = []

    def rec(i, inc):
        if i == end:
            out.append((end, tuple(inc)))
            return
        if P.try_add(i):
            inc.append(i)
            rec(i + 1, inc)
            inc.pop()
            P.remove(i)
        rec(i + 1, inc)

    rec(start, [])
    return out


def _parallel(factory, limits: SearchLimits) -> SearchResult:
    depth = max(1, (limits.workers * 4 - 1).bit_length())
    tasks = _prefixes(factory, depth)
    ctx = mp.get_context("fork")
    inc = ctx.RawValue("q", -1)
    counter = ctx.RawValue("q", 0)
    lock = ctx.Lock()
    with ctx.Pool(limits.workers, initializer=_init_worker,
                  initargs=(factory, limits, inc, lock, counter)) as pool:
        results = pool.map(_run_prefix, tasks, chunksize=1)
    nodes = sum(r[2] for r in results)
    exact = all(r[3] for r in results)
    value = max([r[0] for r in results] + [-1])
    if value < 0:
        P = factory()
        P.prepare()
        return SearchResult(P.value(), P.chosen(), exact, nodes, 0.0)
    seq_limits = SearchLimits(limits.max_nodes, limits.max_seconds, 1)
    again = branch_and_bound(factory, seq_limits, target=value)
    if again.value >= value:
        return SearchResult(again.value, again.chosen, exact, nodes + again.nodes, 0.0)
    # the witness pass ran out of budget; fall back to a worker's witness
    winner = next(r for r in results if r[0] == value and r[1] is not None)
    return SearchResult(value, winner[1], False, nodes + again.nodes, 0.0)
