"""Lettered hypergraphs and the counting audit of the letter method.

A lettering labels every edge of an ordered hypergraph with a letter, and two
edges may share a letter only when they have the same greatest vertex.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb, factorial

from .errors import ArityTooSmall, NotKHtFree, NotUniformMultiplicity, ParseError
from .hypercore import (
    Hypergraph,
    _content_lines,
    _ints,
    _take_hypergraph,
    build_k_h_t,
    find_embedding,
    format_hypergraph,
)


@dataclass(frozen=True)
class LetteredHypergraph:
    """``letters[i]`` is the letter of ``base.edges[i]``.

    Letter ids must be dense (``0..r-1``). The greatest-vertex rule is not
    enforced here; :func:`validate_lettering` reports violations.
    """

    base: Hypergraph
    letters: tuple[int, ...]
    k: int | None = None

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if len(letters) != self.base.m:
            raise ValueError(f"{len(letters)} letters for {self.base.m} edges")
        if letters and sorted(set(letters)) != list(range(max(letters) + 1)):
            raise ValueError("letter ids must be dense 0..r-1")
        object.__setattr__(self, "letters", letters)

    @property
    def r(self) -> int:
        return len(set(self.letters))

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.letters).items()))

    def to_text(self) -> str:
        lines = [format_hypergraph(self.base).rstrip("\n")]
        lines.extend(f"{i} {a}" for i, a in enumerate(self.letters))
        return "\n".join(lines) + "\n"

    def to_record(self) -> dict:
        return {"base": self.base.to_record(), "letters": list(self.letters), "k": self.k}


def parse_lettered(text: str, k: int | None = None) -> LetteredHypergraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty lettered hypergraph input")
    G, pos = _take_hypergraph(lines, 0)
    if len(lines) - pos != G.m:
        raise ParseError(f"expected {G.m} 'edge_index letter_id' lines, got {len(lines) - pos}")
    letters = [None] * G.m
    for line in lines[pos:]:
        vals = _ints(line, "letter line")
        if len(vals) != 2 or not 0 <= vals[0] < G.m:
            raise ParseError(f"bad letter line {line!r}")
        if letters[vals[0]] is not None:
            raise ParseError(f"edge {vals[0]} lettered twice")
        letters[vals[0]] = vals[1]
    try:
        return LetteredHypergraph(G, tuple(letters), k)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def letter_transform(Q: Hypergraph, k: int) -> LetteredHypergraph:
    """Greedy lettering: for v from the greatest vertex down, split the edges
    whose greatest vertex is v (lexicographic order) into blocks of exactly k,
    give each block a fresh letter and drop the fewer-than-k leftovers."""
    if k < 1:
        raise ValueError("k must be >= 1")
    by_top: dict[int, list] = defaultdict(list)
    for e in Q.edges:
        by_top[e[-1]].append(e)
    kept: dict[tuple, int] = {}
    letter = 0
    for v in range(Q.n - 1, -1, -1):
        group = by_top.get(v, [])
        for start in range(0, len(group) - len(group) % k, k):
            for e in group[start : start + k]:
                kept[e] = letter
            letter += 1
    base = Q.with_edges(kept)
    return LetteredHypergraph(base, tuple(kept[e] for e in base.edges), k)


@dataclass
class LetteringReport:
    valid: bool
    r: int
    multiplicities: dict[int, int]
    violations: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    short_letters: list[int] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "valid": self.valid,
            "r": self.r,
            "multiplicities": {str(a): c for a, c in self.multiplicities.items()},
            "violations": [{"letter": a, "top_vertices": list(tops)} for a, tops in self.violations],
            "short_letters": self.short_letters,
        }


def validate_lettering(L: LetteredHypergraph, k: int | None = None) -> LetteringReport:
    """Check the greatest-vertex rule; with ``k``, also list letters used
    fewer than k times."""
    tops: dict[int, set[int]] = defaultdict(set)
    for e, a in zip(L.base.edges, L.letters):
        tops[a].add(e[-1])
    violations = [(a, tuple(sorted(vs))) for a, vs in sorted(tops.items()) if len(vs) > 1]
    mult = L.multiplicities()
    short = [a for a, c in mult.items() if k is not None and c < k]
    return LetteringReport(not violations, len(mult), mult, violations, short)


def low_degree_profile(Q: Hypergraph) -> dict[tuple[int, ...], int]:
    """deg(z) for every (d-1)-set z that is the low part of some edge: the
    number of edges made of z plus one vertex greater than max(z)."""
    if Q.d < 2:
        raise ArityTooSmall("low-degree profile needs edges of size >= 2")
    prof: dict[tuple[int, ...], int] = defaultdict(int)
    for e in Q.edges:
        prof[e[:-1]] += 1
    return dict(sorted(prof.items()))


@dataclass
class Lemma2Audit:
    """Every quantity of the counting chain for one lettered instance."""

    n: int
    d: int
    t: int
    r: int
    k: int
    ex_value: int
    deg_profile: dict[tuple[int, ...], int]
    p: int
    tuple_count: int
    excess_sum: int
    pigeonhole_bound: int
    chain_lhs: int
    chain_rhs: int
    p_max: int
    kht_free: bool | None
    verdicts: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "t": self.t,
            "r": self.r,
            "k": self.k,
            "ex_value": self.ex_value,
            "deg_profile": [[list(z), c] for z, c in self.deg_profile.items()],
            "p": self.p,
            "tuple_count": self.tuple_count,
            "excess_sum": self.excess_sum,
            "pigeonhole_bound": self.pigeonhole_bound,
            "chain_lhs": self.chain_lhs,
            "chain_rhs": self.chain_rhs,
            "p_max": self.p_max,
            "kht_free": self.kht_free,
            "verdicts": self.verdicts,
            "passed": self.passed,
        }


def lemma2_audit(L: LetteredHypergraph, H: Hypergraph, t: int, ex_value: int,
                 assert_free: bool = False) -> Lemma2Audit:
    """Audit the pigeonhole count and the inequality chain on one instance.

    ``ex_value`` is an exact value or an upper bound for ex_d(n, H), with
    d = H.d and n = L.base.n. The inequalities are guaranteed only when
    ``L.base`` is K_{H,t}-free; with ``assert_free`` a found copy raises
    :class:`NotKHtFree` carrying the embedding.
    """
    Q = L.base
    d = H.d
    if Q.d != d + 1:
        raise ValueError(f"lettered hypergraph must be {d + 1}-uniform, got {Q.d}")
    if t < 2:
        raise ValueError("t must be >= 2")
    mult = set(L.multiplicities().values())
    if len(mult) > 1:
        raise NotUniformMultiplicity(f"letter multiplicities differ: {sorted(mult)}")
    k = mult.pop() if mult else (L.k or 0)
    r = L.r

    kht_free = None
    if assert_free:
        emb = find_embedding(Q, build_k_h_t(H, t))
        kht_free = emb is None
        if emb is not None:
            raise NotKHtFree("lettered hypergraph contains K_{H,t}", emb)

    prof = low_degree_profile(Q) if Q.d >= 2 else {}
    p = sum(1 for c in prof.values() if c > 0)
    tuple_count = sum(comb(c, t) for c in prof.values() if c >= t)
    excess_sum = sum(c - t + 1 for c in prof.values() if c >= t)
    pigeonhole = comb(r, t) * ex_value
    chain_lhs = (t - 1) * p
    chain_rhs = k * r - excess_sum
    p_max = comb(Q.n, d)
    verdicts = {
        "partition": sum(prof.values()) == Q.m == k * r,
        "chain": chain_lhs >= chain_rhs,
        "excess_le_tuples": excess_sum <= tuple_count,
        "pigeonhole": tuple_count <= pigeonhole,
        "binomial_power": comb(r, t) * factorial(t) <= r**t,
        "p_range": p <= p_max,
    }
    return Lemma2Audit(Q.n, d, t, r, k, ex_value, prof, p, tuple_count, excess_sum,
                       pigeonhole, chain_lhs, chain_rhs, p_max, kht_free, verdicts)
