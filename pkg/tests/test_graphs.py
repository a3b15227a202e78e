import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dense_disagreements, random_graph
from matchability.datasets import load_karate
from matchability.errors import InputError
from matchability.graphs import (
    Graph,
    Permutation,
    complement,
    disagreements,
    from_edge_list,
    largest_component,
    permutation_distance,
    relabel,
    shuffle_disagreements,
    summary_stats,
)


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(InputError):
            Permutation([0, 0, 1])
        with pytest.raises(InputError):
            Permutation([0, 3, 1])

    def test_inverse_and_compose(self, rng):
        sigma = Permutation(rng.permutation(12))
        assert sigma.compose(sigma.inverse()) == Permutation.identity(12)
        assert sigma.inverse().compose(sigma) == Permutation.identity(12)

    def test_moved_count_never_one(self, rng):
        for _ in range(50):
            assert Permutation(rng.permutation(9)).moved_count() != 1


class TestFromEdgeList:
    def test_single_edge_symmetrized(self):
        g = from_edge_list([(0, 1)], n=3)
        expected = np.zeros((3, 3), dtype=np.uint8)
        expected[0, 1] = expected[1, 0] = 1
        assert np.array_equal(g.to_dense(), expected)

    def test_empty(self):
        g = from_edge_list([], n=5)
        assert g.edge_count() == 0
        assert summary_stats(g).density == 0.0

    def test_duplicates_collapse(self):
        g = from_edge_list([(0, 1), (1, 0), (0, 1)], n=2)
        assert g.edge_count() == 1

    def test_one_indexed(self):
        g = from_edge_list([(1, 2)], n=2, one_indexed=True)
        assert g.has_edge(0, 1)

    def test_out_of_range(self):
        with pytest.raises(InputError):
            from_edge_list([(0, 5)], n=3)

    def test_self_loop_policy(self):
        with pytest.raises(InputError):
            from_edge_list([(1, 1)], n=3)
        g = from_edge_list([(1, 1), (0, 1)], n=3, drop_loops=True)
        assert g.edge_count() == 1


class TestRelabel:
    def test_identity(self, rng):
        g = random_graph(rng, 17)
        assert relabel(g, Permutation.identity(17)) == g

    def test_inverse_roundtrip(self, rng):
        g = random_graph(rng, 23)
        q = Permutation(rng.permutation(23))
        assert relabel(relabel(g, q), q.inverse()) == g

    def test_path_swap_hand_enumeration(self):
        # path 0-1-2-3 relabeled by swap(0,3) has edges {3,1},{1,2},{2,0}
        g = from_edge_list([(0, 1), (1, 2), (2, 3)], n=4)
        r = relabel(g, Permutation.swap(4, 0, 3))
        assert sorted(map(tuple, r.edges().tolist())) == [(0, 2), (1, 2), (1, 3)]

    def test_preserves_degree_multiset_and_edges(self, rng):
        g = random_graph(rng, 31)
        q = Permutation(rng.permutation(31))
        r = relabel(g, q)
        assert r.edge_count() == g.edge_count()
        assert sorted(r.degrees().tolist()) == sorted(g.degrees().tolist())

    def test_size_mismatch(self, rng):
        with pytest.raises(InputError):
            relabel(random_graph(rng, 5), Permutation.identity(4))


class TestDisagreements:
    def test_identical(self, rng):
        g = random_graph(rng, 12)
        assert disagreements(g, g) == 0

    def test_empty_vs_complete(self):
        assert disagreements(Graph.empty(3), Graph.complete(3)) == 6

    def test_ring_lattice_swap(self):
        from matchability.generators import RingLattice, generate

        g = generate(RingLattice(20, 2), seed=0)
        b = relabel(g, Permutation.swap(20, 0, 1))
        assert disagreements(g, b) == 8
        assert dense_disagreements(g, b) == 8

    def test_even_and_equal_to_double_pairs(self, rng):
        g = random_graph(rng, 19)
        q = Permutation(rng.permutation(19))
        d = disagreements(g, relabel(g, q))
        assert d % 2 == 0
        assert d == shuffle_disagreements(g, q)

    def test_permutation_invariance(self, rng):
        a = random_graph(rng, 21)
        b = random_graph(rng, 21)
        q = Permutation(rng.permutation(21))
        assert disagreements(relabel(a, q), relabel(b, q)) == disagreements(a, b)

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            disagreements(Graph.empty(3), Graph.empty(4))


class TestComplement:
    def test_empty_to_complete(self):
        assert complement(Graph.empty(4)) == Graph.complete(4)

    def test_involution(self, rng):
        g = random_graph(rng, 67)
        assert complement(complement(g)) == g

    def test_path_complement(self):
        g = from_edge_list([(0, 1), (1, 2)], n=3)
        assert complement(g) == from_edge_list([(0, 2)], n=3)


class TestPermutationDistance:
    def test_zero_iff_equal(self, rng):
        p = Permutation(rng.permutation(9))
        assert permutation_distance(p, p) == 0

    def test_swap_is_four(self):
        assert permutation_distance(Permutation.identity(5), Permutation.swap(5, 0, 1)) == 4

    def test_three_cycle_is_six(self):
        assert (
            permutation_distance(Permutation.identity(5), Permutation.cycle(5, [0, 1, 2])) == 6
        )

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
    def test_triangle_inequality_after_sqrt(self, seed, n):
        rng = np.random.default_rng(seed)
        p, q, r = (Permutation(rng.permutation(n)) for _ in range(3))
        dpq = permutation_distance(p, q) ** 0.5
        dqr = permutation_distance(q, r) ** 0.5
        dpr = permutation_distance(p, r) ** 0.5
        assert dpr <= dpq + dqr + 1e-12


class TestSummaryStats:
    def test_karate_table_values(self):
        s = summary_stats(load_karate())
        assert s.n == 34
        assert abs(s.mean_degree - 4.588) < 1e-3
        assert abs(s.density - 0.14) < 5e-3
        assert abs(s.clustering - 0.25) < 1e-2
        assert abs(s.skewness - 2.00) < 5e-2
        assert abs(s.rsd - 0.84) < 2e-2

    def test_complete_graph(self):
        s = summary_stats(Graph.complete(5))
        assert s.mean_degree == 4.0
        assert s.density == 1.0
        assert s.clustering == 1.0
        assert s.rsd == 0.0

    def test_star_graph(self):
        s = summary_stats(from_edge_list([(0, i) for i in range(1, 5)], n=5))
        assert abs(s.mean_degree - 1.6) < 1e-12
        assert s.clustering == 0.0

    def test_density_identity(self, rng):
        g = random_graph(rng, 40)
        s = summary_stats(g)
        assert abs(s.density - s.mean_degree / 39) < 1e-12

    def test_too_small(self):
        with pytest.raises(InputError):
            summary_stats(Graph.empty(1))


def test_largest_component():
    g = from_edge_list([(0, 1), (1, 2), (3, 4)], n=6)
    comp = largest_component(g)
    assert comp.n == 3
    assert comp.edge_count() == 2


def test_graph_validation_rejects_asymmetric():
    bad = np.zeros((3, 3), dtype=np.uint8)
    bad[0, 1] = 1
    with pytest.raises(InputError):
        Graph.from_dense(bad)
    loop = np.zeros((2, 2), dtype=np.uint8)
    loop[0, 0] = 1
    with pytest.raises(InputError):
        Graph.from_dense(loop)
