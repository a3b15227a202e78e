"""Backend equivalence: the numba kernels and the numpy fallback must be
bit-identical, and both must agree with dense oracles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_graph
from matchability import _bits
from matchability._rng import pair_uniforms, stream_seed
from matchability.graphs import Graph, Permutation
from matchability.kernels import _numba as knb
from matchability.kernels import _numpy as knp

BACKENDS = [knp, knb]


def test_pack_unpack_roundtrip(rng):
    for n in (1, 5, 63, 64, 65, 130):
        bits = (rng.random((n, n)) < 0.5).astype(np.uint8)
        packed = _bits.pack_rows(bits, n)
        assert packed.shape == (n, _bits.n_words(n))
        assert np.array_equal(_bits.unpack_rows(packed, n), bits)


def test_popcount_matches_python_bit_count(rng):
    words = rng.integers(0, 2**63, size=200, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    expected = np.array([int(w).bit_count() for w in words])
    assert np.array_equal(_bits.popcount(words).astype(int), expected)


def test_get_bits_matches_dense(rng):
    g = random_graph(rng, 70)
    dense = g.to_dense()
    rows = rng.integers(0, 70, size=9)
    cols = rng.integers(0, 70, size=13)
    assert np.array_equal(_bits.get_bits(g.packed, rows, cols), dense[np.ix_(rows, cols)])


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_disagreement_count_oracle(impl, rng):
    a = random_graph(rng, 90)
    b = random_graph(rng, 90)
    assert impl.disagreement_count(a.packed, b.packed) == (a.to_dense() != b.to_dense()).sum()


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_common_edge_trace_oracle(impl, rng):
    a = random_graph(rng, 75)
    b = random_graph(rng, 75)
    assert impl.common_edge_trace(a.packed, b.packed) == (
        a.to_dense().astype(int) * b.to_dense()
    ).sum()


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_degrees_oracle(impl, rng):
    g = random_graph(rng, 77)
    assert np.array_equal(impl.degrees(g.packed, 77), g.to_dense().sum(axis=1))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 70))
def test_shuffled_disagreements_matches_dense_oracle(seed, n):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p=rng.uniform(0.05, 0.9))
    sigma = rng.permutation(n).astype(np.int64)
    perm = Permutation(sigma)
    dense = g.to_dense()
    oracle = int((dense != dense[np.ix_(sigma, sigma)]).sum())
    moved = perm.moved_indices()
    assert knb.shuffled_disagreements(g.packed, n, sigma, moved) == oracle
    assert knp.shuffled_disagreements(g.packed, n, sigma, moved) == oracle


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 80))
def test_relabel_bits_backends_agree_with_dense(seed, n):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n)
    sigma = rng.permutation(n).astype(np.int64)
    expected = g.to_dense()[np.ix_(sigma, sigma)]
    out_nb = knb.relabel_bits(g.packed, n, sigma)
    out_np = knp.relabel_bits(g.packed, n, sigma)
    assert np.array_equal(out_nb, out_np)
    assert np.array_equal(_bits.unpack_rows(out_nb, n), expected)


@pytest.mark.parametrize("p", [0.0, 0.13, 0.5, 1.0])
def test_corrupt_two_rate_backends_identical(p, rng):
    n = 83
    g = random_graph(rng, n)
    seed = np.uint64(stream_seed(987654321, 0))
    out_nb = knb.corrupt_two_rate(g.packed, n, p, 1.0 - p, seed)
    out_np = knp.corrupt_two_rate(g.packed, n, p, 1.0 - p, seed)
    assert np.array_equal(out_nb, out_np)
    Graph(n, out_nb)  # output stays symmetric and hollow


def test_corrupt_matrix_rate_backends_identical(rng):
    n = 41
    g = random_graph(rng, n)
    psi1 = np.triu(rng.random((n, n)), 1)
    psi1 = psi1 + psi1.T
    psi2 = np.triu(rng.random((n, n)), 1)
    psi2 = psi2 + psi2.T
    seed = np.uint64(stream_seed(5, 0))
    out_nb = knb.corrupt_matrix_rate(g.packed, n, psi1, psi2, seed)
    out_np = knp.corrupt_matrix_rate(g.packed, n, psi1, psi2, seed)
    assert np.array_equal(out_nb, out_np)
    Graph(n, out_nb)


def test_corrupt_matches_reference_pair_stream(rng):
    # kernels must consume exactly the uniforms defined by pair_uniforms
    n = 29
    g = Graph.empty(n)
    seed = stream_seed(31337, 0)
    out = knb.corrupt_two_rate(g.packed, n, 0.37, 0.0, np.uint64(seed))
    dense = _bits.unpack_rows(out, n)
    i, j = np.triu_indices(n, 1)
    keys = (i * n + j).astype(np.uint64)
    expected = (pair_uniforms(seed, keys) < 0.37).astype(np.uint8)
    assert np.array_equal(dense[i, j], expected)


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_triangle_and_triples_oracle(impl, rng):
    g = random_graph(rng, 60, p=0.2)
    dense = g.to_dense().astype(np.int64)
    tri3 = int(np.trace(dense @ dense @ dense)) // 2
    deg = dense.sum(axis=1)
    triples = int((deg * (deg - 1) // 2).sum())
    assert impl.triangle_and_triples(g.packed, 60) == (tri3, triples)
