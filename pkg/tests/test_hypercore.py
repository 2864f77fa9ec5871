from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import embeds
from turanlab.errors import (
    ArityMismatch,
    DuplicateEdge,
    ParameterOrder,
    ParseError,
    UnsupportedSize,
    VertexOutOfRange,
    WrongArity,
)
from turanlab.hypercore import (
    Hypergraph,
    all_hypergraphs,
    automorphisms,
    build_k_h_t,
    build_k_h_t_s_r,
    canonical_form,
    complete,
    contains,
    cycle,
    find_embedding,
    is_free,
    is_isomorphic,
    make_hypergraph,
    matching,
    parse_hypergraph,
    parse_hypergraphs,
    random_free_hypergraph,
    relabel,
)


def random_hypergraph(rng, n, d, p):
    return make_hypergraph(n, d, [e for e in itertools.combinations(range(n), d) if rng.random() < p])


@st.composite
def hypergraphs(draw, max_n=6, d=None):
    d = draw(st.integers(1, 3)) if d is None else d
    n = draw(st.integers(d, max_n))
    all_edges = list(itertools.combinations(range(n), d))
    chosen = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=len(all_edges)))
    return make_hypergraph(n, d, chosen)


class TestConstruction:
    def test_canonical_edges(self):
        G = make_hypergraph(4, 2, [(3, 1), (0, 2)])
        assert G.edges == ((0, 2), (1, 3))
        assert G.m == 2
        assert G.degrees == (1, 1, 1, 1)

    def test_validation(self):
        with pytest.raises(WrongArity):
            make_hypergraph(4, 2, [(0, 1, 2)])
        with pytest.raises(VertexOutOfRange):
            make_hypergraph(3, 2, [(0, 3)])
        with pytest.raises(DuplicateEdge):
            make_hypergraph(3, 2, [(0, 1), (1, 0)])
        with pytest.raises(WrongArity):
            make_hypergraph(3, 2, [(1, 1)])

    def test_builders(self):
        assert matching(2, 3).edges == ((0, 1), (2, 3), (4, 5))
        assert cycle(4).edges == ((0, 1), (0, 3), (1, 2), (2, 3))
        assert complete(3, 5).m == 10
        assert is_isomorphic(cycle(4), build_k_h_t(matching(1, 2), 2))

    def test_k_h_t(self):
        K = build_k_h_t(cycle(4), 2)
        assert (K.n, K.d, K.m) == (6, 3, 8)
        for e in cycle(4).edges:
            for a in (4, 5):
                assert K.has_edge(tuple(sorted(e + (a,))))

    def test_k_h_t_s_r(self):
        H = matching(1, 2)
        assert build_k_h_t_s_r(H, 2, 2, 1) == build_k_h_t(H, 2)
        K = build_k_h_t_s_r(H, 2, 3, 2)
        # every pair of special vertices has 2 disjoint copies of H: C(3,2)*2*2*2 edges
        assert K.d == 2
        assert K.m == 3 * 2 * 2 * 2
        with pytest.raises(ParameterOrder):
            build_k_h_t_s_r(H, 3, 2, 1)


class TestText:
    def test_round_trip(self):
        G = build_k_h_t(cycle(4), 2)
        assert parse_hypergraph(G.to_text()) == G
        assert Hypergraph.from_record(G.to_record()) == G

    def test_comments_and_many(self):
        text = "# two graphs\n2 3 1\n0 1\n\n2 2 1\n0 1  # tail comment\n"
        Gs = parse_hypergraphs(text)
        assert [G.n for G in Gs] == [3, 2]

    @pytest.mark.parametrize("text", ["", "2 3", "2 3 2\n0 1\n", "x y z\n", "2 3 1\n0 1 2\n"])
    def test_bad_input(self, text):
        with pytest.raises(ParseError):
            parse_hypergraph(text)

    @given(hypergraphs())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_property(self, G):
        assert parse_hypergraph(G.to_text()) == G


class TestContainment:
    @pytest.mark.parametrize("seed", range(40))
    def test_against_injections(self, seed):
        rng = random.Random(seed)
        d = rng.choice([1, 2, 3])
        H = random_hypergraph(rng, rng.randint(d, 5), d, 0.5)
        G = random_hypergraph(rng, rng.randint(d, 7), d, 0.6)
        found = find_embedding(G, H)
        assert (found is not None) == embeds(G.edges, G.n, H.edges, H.n)
        if found is not None:
            assert len(set(found.values())) == len(found)
            for e in H.edges:
                assert G.has_edge(tuple(sorted(found[v] for v in e)))

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            contains(cycle(4), complete(3, 4))

    def test_free(self):
        assert is_free(complete(2, 3), cycle(4))
        assert not is_free(complete(2, 4), cycle(4))
        # isolated pattern vertices still need room
        assert not contains(make_hypergraph(2, 1, [(0,)]), make_hypergraph(3, 1, [(0,)]))

    @given(hypergraphs(max_n=5, d=2), hypergraphs(max_n=6, d=2))
    @settings(max_examples=80, deadline=None)
    def test_containment_property(self, H, G):
        assert contains(G, H) == embeds(G.edges, G.n, H.edges, H.n)


class TestSymmetry:
    def test_automorphism_counts(self):
        assert len(automorphisms(cycle(4))) == 8
        assert len(automorphisms(complete(2, 4))) == 24
        assert len(automorphisms(matching(2, 2))) == 8

    def test_automorphisms_preserve_edges(self):
        H = build_k_h_t(cycle(4), 2)
        for p in automorphisms(H):
            assert relabel(H, p) == H

    def test_canonical_form_invariant(self):
        rng = random.Random(5)
        for _ in range(30):
            G = random_hypergraph(rng, 6, 2, 0.5)
            perm = list(range(6))
            rng.shuffle(perm)
            assert canonical_form(relabel(G, perm)) == canonical_form(G)

    def test_canonical_form_separates(self):
        # isomorphism classes of graphs on 4 vertices: 11
        classes = {canonical_form(G) for G in all_hypergraphs(4, 2)}
        assert len(classes) == 11

    def test_size_limit(self):
        with pytest.raises(UnsupportedSize):
            canonical_form(complete(2, 11))


class TestRandom:
    def test_random_free_is_free_and_maximal(self):
        rng = random.Random(0)
        for _ in range(10):
            G = random_free_hypergraph(6, 2, cycle(4), rng)
            assert is_free(G, cycle(4))
            for e in itertools.combinations(range(6), 2):
                if not G.has_edge(e):
                    assert contains(G.with_edges(G.edges + (e,)), cycle(4))

    def test_all_hypergraphs_count(self):
        assert sum(1 for _ in all_hypergraphs(4, 2)) == 64
        assert sum(1 for _ in all_hypergraphs(4, 3, max_edges=2)) == 1 + 4 + 6
