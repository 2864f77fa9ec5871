"""Ordered uniform hypergraphs, sub-hypergraph containment and constructors.

Vertices are the integers ``0..n-1`` and their natural order is the vertex
ordering. Edges are stored as ascending tuples and the edge list is kept in
lexicographic order, so equal hypergraphs compare and serialize identically.

Containment is the unordered notion: ``G`` contains ``H`` when some injection
``V(H) -> V(G)`` maps every edge of ``H`` onto an edge of ``G``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityMismatch,
    DuplicateEdge,
    ParameterOrder,
    ParseError,
    UnsupportedSize,
    VertexOutOfRange,
    WrongArity,
)

Edge = tuple[int, ...]

CANONICAL_FORM_MAX_N = 10


def edge_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Hypergraph:
    """A d-uniform hypergraph on vertices ``0..n-1``.

    Construction validates and canonicalizes ``edges``; they may be passed in
    any order and each edge in any vertex order.
    """

    n: int
    d: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        if self.d < 1:
            raise ValueError(f"uniformity must be >= 1, got {self.d}")
        canon = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.d or len(set(e)) != self.d:
                raise WrongArity(f"edge {e} is not a set of {self.d} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise VertexOutOfRange(f"edge {e} has a vertex outside 0..{self.n - 1}")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise DuplicateEdge(f"edge {a} listed twice")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> frozenset[int]:
        """Edges as vertex bitmasks."""
        return frozenset(edge_mask(e) for e in self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def edge_index(self, edge: Sequence[int]) -> int:
        """Position of ``edge`` in the canonical edge list (its EdgeId)."""
        key = tuple(sorted(edge))
        lo, hi = 0, len(self.edges)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.edges[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.edges) or self.edges[lo] != key:
            raise KeyError(key)
        return lo

    def has_edge(self, edge: Sequence[int]) -> bool:
        return edge_mask(edge) in self.masks

    def with_edges(self, edges: Iterable[Sequence[int]]) -> Hypergraph:
        """Same vertex set and uniformity, different edge list."""
        return Hypergraph(self.n, self.d, tuple(tuple(e) for e in edges))

    def to_text(self) -> str:
        return format_hypergraph(self)

    def to_record(self) -> dict:
        return {"n": self.n, "d": self.d, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_record(cls, rec: dict) -> Hypergraph:
        return cls(int(rec["n"]), int(rec["d"]), tuple(tuple(e) for e in rec["edges"]))

    def __str__(self):
        body = " ".join("{" + ",".join(map(str, e)) + "}" for e in self.edges)
        return f"Hypergraph(n={self.n}, d={self.d}, m={self.m}: {body})"


def make_hypergraph(n: int, d: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    return Hypergraph(n, d, tuple(tuple(e) for e in edges))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_hypergraph(G: Hypergraph) -> str:
    lines = [f"{G.d} {G.n} {G.m}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"non-integer token in {what}: {line!r}") from None


def _take_hypergraph(lines: list[str], pos: int) -> tuple[Hypergraph, int]:
    header = _ints(lines[pos], "hypergraph header")
    if len(header) != 3:
        raise ParseError(f"hypergraph header must be 'd n m', got {lines[pos]!r}")
    d, n, m = header
    if pos + 1 + m > len(lines):
        raise ParseError(f"header announces {m} edges but input ends early")
    edges = []
    for line in lines[pos + 1 : pos + 1 + m]:
        e = _ints(line, "edge line")
        edges.append(tuple(e))
    try:
        G = Hypergraph(n, d, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return G, pos + 1 + m


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse exactly one hypergraph (``d n m`` header, then m edge lines)."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty hypergraph input")
    G, pos = _take_hypergraph(lines, 0)
    if pos != len(lines):
        raise ParseError(f"trailing content after hypergraph: {lines[pos]!r}")
    return G


def parse_hypergraphs(text: str) -> list[Hypergraph]:
    """Parse a stream of concatenated hypergraph records."""
    lines = _content_lines(text)
    out, pos = [], 0
    while pos < len(lines):
        G, pos = _take_hypergraph(lines, pos)
        out.append(G)
    return out


def dumps_record(G: Hypergraph) -> str:
    return json.dumps(G.to_record(), sort_keys=True)


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------


class _Plan:
    """A vertex order for the pattern plus, per position, the pattern edges
    that become fully mapped once that position is assigned."""

    __slots__ = ("order", "closing", "fixed")

    def __init__(self, H: Hypergraph, first: Sequence[int]):
        self.fixed = len(first)
        order = list(first)
        placed = set(order)
        rest = [v for v in range(H.n) if v not in placed]
        incident = {v: [e for e in H.edges if v in e] for v in range(H.n)}
        while rest:
            def score(v):
                links = sum(1 for e in incident[v] if any(u in placed for u in e))
                return (links, H.degrees[v], -v)

            v = max(rest, key=score)
            rest.remove(v)
            order.append(v)
            placed.add(v)
        pos = {v: i for i, v in enumerate(order)}
        closing: list[list[tuple[int, ...]]] = [[] for _ in order]
        for e in H.edges:
            last = max(e, key=lambda v: pos[v])
            closing[pos[last]].append(tuple(u for u in e if u != last))
        self.order = order
        self.closing = closing


class Pattern:
    """A compiled forbidden hypergraph, reusable across many host graphs.

    The host is described by ``(n, edge_masks, degrees)`` so search code can
    mutate its own edge set without rebuilding Hypergraph objects.
    """

    def __init__(self, H: Hypergraph):
        self.H = H
        self.hdeg = H.degrees
        self.free_plan = _Plan(H, [])
        # anchored search: one pattern edge per automorphism orbit, and one
        # bijection onto the anchor per coset of the edge's stabilizer
        auts = automorphisms(H)
        self.anchor_plans = []
        seen: set[Edge] = set()
        for f in H.edges:
            if f in seen:
                continue
            stab = []
            for a in auts:
                g = tuple(sorted(a[v] for v in f))
                seen.add(g)
                if g == f:
                    stab.append(tuple(f.index(a[v]) for v in f))
            reps, covered = [], set()
            for perm in itertools.permutations(range(len(f))):
                if perm in covered:
                    continue
                reps.append(perm)
                covered.update(tuple(perm[s[j]] for j in range(len(f))) for s in stab)
            self.anchor_plans.append((_Plan(H, list(f)), f, reps))

    def find(self, n: int, edges, degs, anchor: Sequence[int] | None = None):
        """Return an embedding dict or None.

        With ``anchor`` (a host edge), only embeddings that map some pattern
        edge onto the anchor are considered.
        """
        H = self.H
        if H.n > n or H.m > len(edges):
            return None
        if anchor is None:
            return self._run(self.free_plan, n, edges, degs, {}, set())
        anchor = tuple(anchor)
        for plan, f, reps in self.anchor_plans:
            for perm in reps:
                image = tuple(anchor[j] for j in perm)
                if any(degs[w] < self.hdeg[u] for u, w in zip(f, image)):
                    continue
                assign = dict(zip(f, image))
                ok = True
                for p in range(plan.fixed):
                    for rest in plan.closing[p]:
                        m = 1 << assign[plan.order[p]]
                        for u in rest:
                            m |= 1 << assign[u]
                        if m not in edges:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                found = self._run(plan, n, edges, degs, assign, set(image))
                if found is not None:
                    return found
        return None

    def _run(self, plan: _Plan, n, edges, degs, assign, used):
        order, closing, hdeg = plan.order, plan.closing, self.hdeg
        total = len(order)

        def step(p):
            if p == total:
                return True
            u = order[p]
            need = hdeg[u]
            cl = closing[p]
            base = [0] * len(cl)
            for i, rest in enumerate(cl):
                m = 0
                for x in rest:
                    m |= 1 << assign[x]
                base[i] = m
            for w in range(n):
                if w in used or degs[w] < need:
                    continue
                bw = 1 << w
                if all((b | bw) in edges for b in base):
                    assign[u] = w
                    used.add(w)
                    if step(p + 1):
                        return True
                    used.discard(w)
                    del assign[u]
            return False

        if step(plan.fixed):
            return dict(assign)
        return None


def find_embedding(G: Hypergraph, H: Hypergraph) -> dict[int, int] | None:
    """An injection V(H) -> V(G) sending edges to edges, or None."""
    if G.d != H.d:
        raise ArityMismatch(f"host is {G.d}-uniform but pattern is {H.d}-uniform")
    return Pattern(H).find(G.n, G.masks, G.degrees)


def contains(G: Hypergraph, H: Hypergraph) -> bool:
    return find_embedding(G, H) is not None


def is_free(G: Hypergraph, H: Hypergraph) -> bool:
    return not contains(G, H)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

AUTOMORPHISM_LIMIT = 50_000


def automorphisms(H: Hypergraph) -> list[tuple[int, ...]]:
    """Vertex permutations preserving E(H), as tuples ``a`` with v -> a[v].

    Candidates are restricted to permutations preserving a degree-based
    vertex invariant; if there are more than AUTOMORPHISM_LIMIT of them only
    the identity is returned, which is always a safe answer for callers
    that use automorphisms purely for pruning.
    """
    identity = tuple(range(H.n))
    inv = _vertex_invariants(H)
    classes = [[v for v in range(H.n) if inv[v] == k] for k in sorted(set(inv))]
    count = 1
    for c in classes:
        for i in range(2, len(c) + 1):
            count *= i
    if count > AUTOMORPHISM_LIMIT:
        return [identity]
    masks = H.masks
    out = []
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        a = [0] * H.n
        for c, img in zip(classes, choice):
            for v, w in zip(c, img):
                a[v] = w
        if all(edge_mask(a[v] for v in e) in masks for e in H.edges):
            out.append(tuple(a))
    return out


def _vertex_invariants(G: Hypergraph) -> list[tuple]:
    deg = G.degrees
    nbr = [[] for _ in range(G.n)]
    for e in G.edges:
        for v in e:
            nbr[v].extend(deg[u] for u in e if u != v)
    return [(deg[v], tuple(sorted(nbr[v]))) for v in range(G.n)]


def canonical_form(G: Hypergraph) -> tuple:
    """Isomorphism-invariant key, by exhaustive relabeling within classes of
    vertices that share a degree-based invariant. Limited to n <= 10."""
    if G.n > CANONICAL_FORM_MAX_N:
        raise UnsupportedSize(f"canonical form supports n <= {CANONICAL_FORM_MAX_N}, got {G.n}")
    inv = _vertex_invariants(G)
    keys = sorted(set(inv))
    classes = [[v for v in range(G.n) if inv[v] == k] for k in keys]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        label = {}
        for v in itertools.chain.from_iterable(choice):
            label[v] = len(label)
        form = tuple(sorted(tuple(sorted(label[v] for v in e)) for e in G.edges))
        if best is None or form < best:
            best = form
    return (G.n, G.d, tuple(keys), best)


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    if (G.n, G.d, G.m) != (H.n, H.d, H.m):
        return False
    if sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def matching(d: int, s: int) -> Hypergraph:
    """``s`` pairwise disjoint edges of size ``d`` on ``d*s`` vertices."""
    if d < 1 or s < 1:
        raise ValueError("matching needs d >= 1 and s >= 1")
    return Hypergraph(d * s, d, tuple(tuple(range(i * d, i * d + d)) for i in range(s)))


def cycle(n: int) -> Hypergraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Hypergraph(n, 2, tuple((i, (i + 1) % n) for i in range(n)))


def complete(d: int, n: int) -> Hypergraph:
    return Hypergraph(n, d, tuple(itertools.combinations(range(n), d)))


def build_k_h_t(H: Hypergraph, t: int) -> Hypergraph:
    """Add ``t`` vertices after V(H); every edge e becomes e+{v_1},...,e+{v_t}."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if H.m < 1:
        raise ValueError("H needs at least one edge")
    apex = range(H.n, H.n + t)
    return Hypergraph(H.n + t, H.d + 1, tuple(e + (v,) for e in H.edges for v in apex))


def build_k_h_t_s_r(H: Hypergraph, t: int, s: int, r: int) -> Hypergraph:
    """``r`` disjoint copies of H for every t-subset T of ``s`` special
    vertices, each copy's edges extended by every vertex of T.

    Copies occupy the low vertex ids; the special vertices are the ``s``
    greatest, so ``build_k_h_t_s_r(H, t, t, 1) == build_k_h_t(H, t)``.
    """
    if s < t:
        raise ParameterOrder(f"need s >= t, got s={s}, t={t}")
    if t < 2 or r < 1:
        raise ValueError("need t >= 2 and r >= 1")
    if H.m < 1:
        raise ValueError("H needs at least one edge")
    copies = comb(s, t) * r
    base = copies * H.n
    edges = []
    offset = 0
    for T in itertools.combinations(range(base, base + s), t):
        for _ in range(r):
            for e in H.edges:
                shifted = tuple(v + offset for v in e)
                edges.extend(shifted + (u,) for u in T)
            offset += H.n
    return Hypergraph(base + s, H.d + 1, tuple(edges))


def relabel(G: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Image of G under the vertex map ``v -> perm[v]``."""
    return G.with_edges(tuple(perm[v] for v in e) for e in G.edges)


def random_free_hypergraph(n: int, d: int, H: Hypergraph, rng: random.Random,
                           max_edges: int | None = None) -> Hypergraph:
    """Random H-free hypergraph: insert edges in random order, skipping any
    edge that would create a copy of H."""
    universe = list(itertools.combinations(range(n), d))
    rng.shuffle(universe)
    limit = len(universe) if max_edges is None else max_edges
    pat = Pattern(H)
    masks: set[int] = set()
    degs = [0] * n
    chosen = []
    for e in universe:
        if len(chosen) >= limit:
            break
        m = edge_mask(e)
        masks.add(m)
        for v in e:
            degs[v] += 1
        if pat.find(n, masks, degs, anchor=e) is None:
            chosen.append(e)
        else:
            masks.discard(m)
            for v in e:
                degs[v] -= 1
    return Hypergraph(n, d, tuple(chosen))


def all_hypergraphs(n: int, d: int, max_edges: int | None = None) -> Iterator[Hypergraph]:
    """Every labeled d-uniform hypergraph on n vertices (optionally capped)."""
    universe = list(itertools.combinations(range(n), d))
    top = len(universe) if max_edges is None else min(max_edges, len(universe))
    for size in range(top + 1):
        for es in itertools.combinations(universe, size):
            yield Hypergraph(n, d, es)
