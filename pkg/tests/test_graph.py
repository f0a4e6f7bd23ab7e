import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from graphfactor.graph import (
    SimpleGraph,
    cartesian_product,
    cayley_z2,
    components,
    disjoint_union,
    grid_coord,
    grid_graph,
    grid_index,
    induced_subgraph,
    make_complete_bipartite,
    make_cycle,
    make_path,
    make_petersen,
    remove_vertices,
    symmetrize,
    torus_graph,
)


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


class TestValidation:
    def test_rejects_asymmetric(self):
        a = np.zeros((3, 3), dtype=bool)
        a[0, 1] = True
        with pytest.raises(ValueError):
            SimpleGraph(a)

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            SimpleGraph(np.eye(2, dtype=bool))
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(2, [(1, 1)])

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(2, [], labels=["a", "a"])

    def test_adjacency_is_read_only(self):
        g = make_path(3)
        with pytest.raises(ValueError):
            g.adj[0, 2] = True

    def test_equality_is_ordering_sensitive(self):
        p = make_path(3)
        assert p == make_path(3)
        assert p != p.relabel([1, 0, 2])


class TestFamilies:
    def test_path_examples(self):
        assert make_path(1).num_edges == 0
        assert make_path(2).edges == ((0, 1),)
        p8 = make_path(8)
        assert p8.num_edges == 7
        assert p8.degrees == (1, 2, 2, 2, 2, 2, 2, 1)
        with pytest.raises(ValueError):
            make_path(0)

    def test_cycle_examples(self):
        assert make_cycle(3).degrees == (2, 2, 2)
        assert nx.is_isomorphic(to_nx(make_cycle(4)), to_nx(make_complete_bipartite(2, 2)))
        c6 = make_cycle(6)
        assert c6.num_edges == 6
        assert nx.is_bipartite(to_nx(c6)) and c6.is_bipartite()
        for bad in (0, 1, 2):
            with pytest.raises(ValueError):
                make_cycle(bad)

    def test_petersen(self):
        p = make_petersen()
        assert (p.n, p.num_edges) == (10, 15)
        assert p.is_regular(3)
        assert p.girth() == 5 == nx.girth(to_nx(p))
        assert nx.is_isomorphic(to_nx(p), nx.petersen_graph())
        assert p.labels is not None and len(set(p.labels)) == 10

    def test_cartesian_product_examples(self):
        assert nx.is_isomorphic(to_nx(cartesian_product(make_path(2), make_path(2))), to_nx(make_cycle(4)))
        g = cartesian_product(make_path(2), make_path(4))
        assert (g.n, g.num_edges) == (8, 10)
        t = cartesian_product(make_cycle(3), make_cycle(3))
        assert t.n == 9 and t.is_regular(4)

    def test_cartesian_product_matches_networkx(self):
        g = cartesian_product(make_path(3), make_cycle(4))
        ref = nx.cartesian_product(to_nx(make_path(3)), to_nx(make_cycle(4)))
        assert nx.is_isomorphic(to_nx(g), ref)

    def test_grid_coordinates_are_row_major_one_based(self):
        assert grid_index(1, 1, 4) == 0
        assert grid_index(2, 3, 4) == 6
        assert grid_coord(6, 4) == (2, 3)
        for v in range(12):
            assert grid_index(*grid_coord(v, 4), 4) == v
        with pytest.raises(ValueError):
            grid_index(0, 1, 4)

    def test_grid_and_torus_are_products(self):
        assert grid_graph(3, 4) == cartesian_product(make_path(3), make_path(4))
        assert torus_graph(3, 5) == cartesian_product(make_cycle(3), make_cycle(5))


class TestCayley:
    def test_torus_as_cayley_graph(self):
        g = cayley_z2(3, 3, [(1, 0), (2, 0), (0, 1), (0, 2)])
        assert g == torus_graph(3, 3)

    def test_one_dimensional_collapse(self):
        assert cayley_z2(5, 1, [(1, 0), (4, 0)]) == make_cycle(5)

    def test_single_generator_pair_is_two_regular(self):
        g = cayley_z2(3, 3, symmetrize(3, 3, [(2, 1)]))
        assert g.is_regular(2)

    def test_rejects_bad_connection_sets(self):
        with pytest.raises(ValueError):
            cayley_z2(3, 3, [(1, 0)])
        with pytest.raises(ValueError):
            cayley_z2(3, 3, [(0, 0)])

    @given(
        st.integers(1, 5),
        st.integers(1, 5),
        st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=4),
        st.integers(0, 4),
        st.integers(0, 4),
    )
    def test_translation_invariance(self, n, m, gens, s, t):
        conn = [x for x in symmetrize(n, m, gens) if x != (0, 0)]
        g = cayley_z2(n, m, conn)
        shift = [((i + s) % n) * m + (j + t) % m for i in range(n) for j in range(m)]
        assert g.relabel(shift) == g


class TestUnionsAndComponents:
    def test_disjoint_union_examples(self):
        pp = disjoint_union(make_path(8), make_path(8))
        assert (pp.n, pp.num_edges) == (16, 14)
        g = make_cycle(5)
        assert disjoint_union(SimpleGraph.empty(0), g) == g
        k2 = make_path(2)
        assert disjoint_union(k2, k2).is_perfect_matching()

    def test_components_examples(self):
        pp = disjoint_union(make_path(8), make_path(8))
        assert [len(c) for c in components(pp)] == [8, 8]
        assert components(make_cycle(5)) == [[0, 1, 2, 3, 4]]
        assert components(SimpleGraph.empty(3)) == [[0], [1], [2]]

    @given(graphs(max_n=9))
    def test_components_partition(self, g):
        comps = components(g)
        flat = sorted(v for c in comps for v in c)
        assert flat == list(range(g.n))
        label = {v: i for i, c in enumerate(comps) for v in c}
        assert all(label[u] == label[v] for u, v in g.edges)
        assert all(induced_subgraph(g, c).is_connected() for c in comps)
        assert len(comps) == nx.number_connected_components(to_nx(g))

    def test_remove_vertices(self):
        g, kept = remove_vertices(make_path(4), [0])
        assert kept == [1, 2, 3] and g == make_path(3)


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_cartesian_product_counts(g, h):
    p = cartesian_product(g, h)
    assert p.n == g.n * h.n
    assert p.num_edges == g.n * h.num_edges + h.n * g.num_edges


@given(graphs(max_n=9))
def test_girth_and_bipartite_match_networkx(g):
    ref = to_nx(g)
    assert g.is_bipartite() == nx.is_bipartite(ref)
    if g.n:
        assert g.is_connected() == nx.is_connected(ref)
    cycles = nx.minimum_cycle_basis(ref)
    want = min((len(c) for c in cycles), default=float("inf"))
    assert g.girth() == want
