from itertools import permutations

import pytest
from hypothesis import given

from conftest import connected_graphs as connected_graph_strategy
from graphfactor.census import connected_graphs
from graphfactor.classify import (
    PrimeVerdict,
    degree_quad_check,
    degree_rules,
    is_c4_free,
    matched_pair_coverage,
    prime_by_degree,
    prime_rule,
    prime_test,
)
from graphfactor.graph import (
    SimpleGraph,
    disjoint_union,
    grid_graph,
    make_complete_bipartite,
    make_cycle,
    make_path,
    make_petersen,
    make_star,
    torus_graph,
)
from graphfactor.product import verify_factorization
from graphfactor.search import SearchBudget, oracle_factorizations

K22 = make_complete_bipartite(2, 2)


class TestC4Free:
    def test_tree(self):
        assert is_c4_free(make_path(6))

    def test_k22_witness(self):
        check = is_c4_free(K22)
        assert not check
        u, a, v, b = check.witness
        assert all(K22.has_edge(x, y) for x, y in [(u, a), (a, v), (v, b), (b, u)])

    def test_petersen(self):
        assert is_c4_free(make_petersen())

    @given(connected_graph_strategy(max_n=8))
    def test_matches_subgraph_search(self, g):
        has_c4 = any(
            g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a)
            for a, b, c, d in permutations(range(g.n), 4)
        )
        assert bool(is_c4_free(g)) == (not has_c4)


class TestDegreeRules:
    def test_petersen(self):
        hit = prime_by_degree(make_petersen())
        assert hit.name == "max-degree-prime" and hit.witnesses["p"] == 3

    def test_odd_torus_has_no_rule(self):
        assert prime_by_degree(torus_graph(3, 3)) is None

    def test_small_grid_fires_two_rules(self):
        names = {hit.name: hit for hit in degree_rules(grid_graph(2, 3))}
        assert names["degree-p-no-kp"].witnesses["p"] == 3
        assert names["max-degree-prime"].witnesses["p"] == 3
        assert prime_by_degree(grid_graph(2, 3)).name == "max-degree-prime"

    def test_degree_p_without_multiples(self):
        # degrees {3, 4}: 3 prime with no 6, 9; 4 is not prime
        g = SimpleGraph.from_edges(
            5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]
        )
        names = [hit.name for hit in degree_rules(g)]
        assert "max-degree-prime" not in names and "degree-p-no-kp" in names

    def test_adjacent_primes_equal(self):
        # 2-regular cycles: p = q = 2, no degree 4, no degree 1
        names = [hit.name for hit in degree_rules(make_cycle(6))]
        assert "adjacent-prime-degrees" in names

    def test_requires_connected(self):
        with pytest.raises(ValueError):
            degree_rules(SimpleGraph.empty(2))


class TestDegreeQuad:
    def test_star_fails(self):
        check = degree_quad_check(make_star(3))
        assert not check and check.witness == (0, 1)

    def test_cycle_passes(self):
        assert degree_quad_check(make_cycle(6))

    def test_factorable_census_graphs_pass(self):
        for n in range(1, 7):
            for g in connected_graphs(n):
                if oracle_factorizations(g).verdict == "factorable":
                    assert degree_quad_check(g)

    def test_contrapositive_on_census(self):
        for n in range(1, 7):
            for g in connected_graphs(n):
                if not degree_quad_check(g):
                    assert oracle_factorizations(g).verdict == "not-factorable"


class TestPrimeTest:
    def test_path(self):
        assert prime_test(make_path(3)).status == "prime-vacuous"

    def test_k22(self):
        v = prime_test(K22)
        assert v.status == "prime-matching"
        (cert,) = v.certificates
        assert cert.has_matching_factor() and cert.g == K22

    def test_odd_torus_is_not_prime(self):
        v = prime_test(torus_graph(3, 3))
        assert v.status == "not-prime" and v.rule == "odd-torus"
        (cert,) = v.certificates
        assert cert.h.is_regular(2) and cert.k.is_regular(2)

    def test_edgeless(self):
        v = prime_test(SimpleGraph.empty(3))
        assert v.status == "not-prime" and not v.is_prime

    def test_unknown_when_budget_runs_out(self):
        g = SimpleGraph.from_edges(12, [(i, (i + d) % 12) for i in range(12) for d in (1, 2)])
        v = prime_test(g, SearchBudget(max_vertices=12, node_limit=10))
        assert v.status == "unknown"

    def test_verdict_invariants(self):
        with pytest.raises(ValueError):
            PrimeVerdict("prime-matching", "x")
        with pytest.raises(ValueError):
            PrimeVerdict("not-prime", "x")
        with pytest.raises(ValueError):
            PrimeVerdict("maybe", "x")

    def test_sound_against_oracle(self):
        for n in range(1, 7):
            for g in connected_graphs(n):
                v = prime_test(g)
                certs = oracle_factorizations(g, find_all=True).certificates
                if v.status == "prime-vacuous":
                    assert not certs
                elif v.status == "prime-matching":
                    assert certs and all(c.has_matching_factor() for c in certs)
                else:
                    assert v.status == "not-prime"
                    assert any(not c.has_matching_factor() for c in certs)

    def test_traces_are_reproducible(self):
        for g in connected_graphs(5):
            assert prime_test(g).to_dict() == prime_test(g).to_dict()

    def test_rule_gated_on_isolated_vertices(self):
        assert prime_rule(disjoint_union(make_path(3), SimpleGraph.empty(1))) is None


def test_matched_pair_coverage_on_connected_certificates():
    # per certificate: every component holds a matched-pair endpoint iff a factor is a perfect matching
    for n in range(2, 7):
        for g in connected_graphs(n):
            for f in oracle_factorizations(g, find_all=True).certificates:
                covered, has_matching = matched_pair_coverage(f)
                assert covered == has_matching


def test_matched_pair_coverage_fails_when_sides_mix():
    # two copies of K2,2, each taking its matching from a different factor
    m = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    h = disjoint_union(m, K22)
    k = disjoint_union(K22, m)
    f = verify_factorization(disjoint_union(K22, K22), h, k)
    assert matched_pair_coverage(f) == (True, False)
