from __future__ import annotations

import pytest

from oracles import ex_oracle, f_oracle
from turanlab.errors import BudgetExceeded
from turanlab.extremal import ex_exact, f_exact, verify_lemma1
from turanlab.hypercore import build_k_h_t, contains, cycle, make_hypergraph, matching
from turanlab.lettering import validate_lettering
from turanlab.records import check_witness
from turanlab.search import SearchLimits

PATTERNS = {
    "M(1,2)": matching(1, 2),
    "M(1,3)": matching(1, 3),
    "M(2,2)": matching(2, 2),
    "C4": cycle(4),
    "P3": make_hypergraph(3, 2, [(0, 1), (1, 2)]),
    "K3": make_hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)]),
}


class TestEx:
    @pytest.mark.parametrize("name", sorted(PATTERNS))
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_against_oracle(self, name, n):
        H = PATTERNS[name]
        rec = ex_exact(n, H)
        assert rec.exact
        assert rec.value == ex_oracle(n, H.d, H.edges, H.n)
        assert check_witness(rec) == []

    def test_known_values(self):
        assert [ex_exact(n, cycle(4)).value for n in range(1, 7)] == [0, 1, 3, 4, 6, 7]
        # triangle-free: floor(n^2 / 4)
        assert [ex_exact(n, PATTERNS["K3"]).value for n in range(1, 7)] == [0, 1, 2, 4, 6, 9]

    def test_three_uniform_against_oracle(self):
        K = build_k_h_t(matching(1, 2), 2)  # K_{2,2}, graph
        H3 = build_k_h_t(matching(2, 1), 2)  # two triples sharing a pair
        for n in range(3, 6):
            assert ex_exact(n, K).value == ex_oracle(n, 2, K.edges, K.n)
            assert ex_exact(n, H3).value == ex_oracle(n, 3, H3.edges, H3.n)

    def test_workers_agree(self):
        H = build_k_h_t(cycle(4), 2)
        one = ex_exact(6, H)
        two = ex_exact(6, H, SearchLimits(workers=2))
        assert one.value == two.value == 16
        assert one.witness == two.witness
        assert not contains(two.witness, H)

    def test_budget(self):
        rec = ex_exact(6, cycle(4), SearchLimits(max_nodes=5))
        assert not rec.exact
        assert rec.value <= 7
        assert not contains(rec.witness, cycle(4))
        with pytest.raises(BudgetExceeded) as info:
            ex_exact(6, cycle(4), SearchLimits(max_nodes=5), strict=True)
        assert info.value.record is not None


class TestF:
    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("name", ["C4", "M(2,2)", "P3"])
    def test_against_lettering_oracle(self, name, n, k):
        H = PATTERNS[name]
        rec = f_exact(n, k, H)
        assert rec.value == f_oracle(n, H.d, k, H.edges, H.n)
        assert check_witness(rec) == []

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_one_uniform_against_oracle(self, k):
        H = matching(1, 3)
        for n in range(1, 7):
            assert f_exact(n, k, H).value == f_oracle(n, 1, k, H.edges, H.n)

    def test_spec_value(self):
        rec = f_exact(4, 2, cycle(4))
        assert rec.value == 2
        rep = validate_lettering(rec.witness, 2)
        assert rep.valid and rep.r == 2

    def test_k_one_equals_ex(self):
        for n in range(1, 7):
            assert f_exact(n, 1, cycle(4)).value == ex_exact(n, cycle(4)).value


class TestLemma1:
    def test_report(self):
        rep = verify_lemma1(5, 2, cycle(4))
        assert rep.holds and rep.passed
        assert rep.rhs == 2 * (rep.f_value + 5)
        assert rep.transform_letters <= rep.f_value
