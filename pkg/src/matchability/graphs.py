"""Graphs, permutations, and the disagreement-counting primitives.

Graphs are simple, undirected, and unweighted: adjacency matrices are
symmetric and hollow, stored bit-packed (see :mod:`matchability._bits`).
All operations are pure; instances are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _bits, kernels
from .errors import InputError


class Permutation:
    """A bijection on {0, ..., n-1}, stored as sigma[i] = image of i."""

    __slots__ = ("sigma",)

    def __init__(self, sigma):
        sigma = np.ascontiguousarray(sigma, dtype=np.int64)
        if sigma.ndim != 1:
            raise InputError("permutation must be a 1-d sequence")
        n = sigma.shape[0]
        seen = np.zeros(n, dtype=bool)
        if n and (sigma.min() < 0 or sigma.max() >= n):
            raise InputError("permutation entries out of range")
        seen[sigma] = True
        if not seen.all():
            raise InputError("permutation is not a bijection")
        sigma.setflags(write=False)
        self.sigma = sigma

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "Permutation":
        sigma = np.arange(n, dtype=np.int64)
        sigma[i], sigma[j] = sigma[j], sigma[i]
        return cls(sigma)

    @classmethod
    def cycle(cls, n: int, vertices) -> "Permutation":
        """Permutation cycling the given vertices: v0 -> v1 -> ... -> v0."""
        sigma = np.arange(n, dtype=np.int64)
        vs = list(vertices)
        for a, b in zip(vs, vs[1:] + vs[:1]):
            sigma[a] = b
        return cls(sigma)

    def inverse(self) -> "Permutation":
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.sigma] = np.arange(self.n, dtype=np.int64)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """Return the permutation i -> self(other(i))."""
        if other.n != self.n:
            raise InputError("size mismatch in composition")
        return Permutation(self.sigma[other.sigma])

    def moved_indices(self) -> np.ndarray:
        return np.nonzero(self.sigma != np.arange(self.n))[0].astype(np.int64)

    def moved_count(self) -> int:
        return int((self.sigma != np.arange(self.n)).sum())

    def is_identity(self) -> bool:
        return self.moved_count() == 0

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.sigma, other.sigma)

    def __hash__(self):
        return hash(self.sigma.tobytes())

    def __repr__(self):
        return f"Permutation({self.sigma.tolist()})"


class Graph:
    """Bit-packed adjacency for an undirected simple graph."""

    __slots__ = ("n", "packed")

    def __init__(self, n: int, packed: np.ndarray, _trusted: bool = False):
        self.n = int(n)
        packed = np.ascontiguousarray(packed, dtype=np.uint64)
        if packed.shape != (self.n, _bits.n_words(self.n)):
            raise InputError("packed adjacency has wrong shape")
        if not _trusted:
            dense = _bits.unpack_rows(packed, self.n)
            _check_dense(dense)
        packed.setflags(write=False)
        self.packed = packed

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, _bits.zeros(n), _trusted=True)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        dense = np.ones((n, n), dtype=np.uint8)
        np.fill_diagonal(dense, 0)
        return cls.from_dense(dense)

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "Graph":
        dense = np.asarray(dense)
        _check_dense(dense)
        n = dense.shape[0]
        return cls(n, _bits.pack_rows(dense.astype(np.uint8), n), _trusted=True)

    def to_dense(self) -> np.ndarray:
        return _bits.unpack_rows(self.packed, self.n)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.packed[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def degrees(self) -> np.ndarray:
        return kernels.degrees(self.packed, self.n)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, lexicographically sorted."""
        chunks = []
        step = max(1, 8_000_000 // max(self.n, 1))
        for lo in range(0, self.n, step):
            block = _bits.unpack_rows(self.packed[lo : lo + step], self.n)
            u, v = np.nonzero(block)
            u = u + lo
            keep = v > u
            if keep.any():
                chunks.append(np.column_stack([u[keep], v[keep]]).astype(np.int64))
        if not chunks:
            return np.empty((0, 2), dtype=np.int64)
        return np.concatenate(chunks, axis=0)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.packed, other.packed)
        )

    def __hash__(self):
        return hash((self.n, self.packed.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def _check_dense(dense: np.ndarray) -> None:
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise InputError("adjacency must be square")
    vals = np.unique(dense)
    if not np.isin(vals, [0, 1]).all():
        raise InputError("adjacency entries must be 0/1")
    if np.diagonal(dense).any():
        raise InputError("adjacency must be hollow (zero diagonal)")
    if not np.array_equal(dense, dense.T):
        raise InputError("adjacency must be symmetric")


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean_degree: float
    density: float
    clustering: float
    skewness: float
    rsd: float


def from_edge_list(edges, n: int, one_indexed: bool = False, drop_loops: bool = False) -> Graph:
    """Build a Graph from (u, v) pairs; duplicates collapse silently."""
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if one_indexed:
        arr = arr - 1
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise InputError(f"edge endpoint out of range for n={n}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        if not drop_loops:
            raise InputError("self-loop in edge list (pass drop_loops to discard)")
        arr = arr[~loops]
    packed = _bits.zeros(n)
    if arr.size:
        u, v = arr[:, 0], arr[:, 1]
        np.bitwise_or.at(packed, (u, v >> 6), np.uint64(1) << (v & 63).astype(np.uint64))
        np.bitwise_or.at(packed, (v, u >> 6), np.uint64(1) << (u & 63).astype(np.uint64))
    return Graph(n, packed, _trusted=True)


def relabel(graph: Graph, perm: Permutation) -> Graph:
    """Return R with R[i, j] = A[sigma(i), sigma(j)] (that is, Q^T A Q)."""
    if perm.n != graph.n:
        raise InputError("permutation size does not match graph")
    return Graph(graph.n, kernels.relabel_bits(graph.packed, graph.n, perm.sigma), _trusted=True)


def disagreements(a: Graph, b: Graph) -> int:
    """||A - B||_F^2: twice the number of vertex pairs whose edge status differs."""
    if a.n != b.n:
        raise InputError("graphs must have equal order")
    return kernels.disagreement_count(a.packed, b.packed)


def shuffle_disagreements(graph: Graph, perm: Permutation) -> int:
    """||A - Q^T A Q||_F^2 without materializing the relabeled graph."""
    if perm.n != graph.n:
        raise InputError("permutation size does not match graph")
    return kernels.shuffled_disagreements(
        graph.packed, graph.n, perm.sigma, perm.moved_indices()
    )


def common_edges_trace(a: Graph, b: Graph) -> int:
    """tr(A B) = twice the number of common edges."""
    if a.n != b.n:
        raise InputError("graphs must have equal order")
    return kernels.common_edge_trace(a.packed, b.packed)


def complement(graph: Graph) -> Graph:
    n = graph.n
    w = _bits.n_words(n)
    full = np.zeros(w, dtype=np.uint64)
    full[: n >> 6] = np.uint64(0xFFFFFFFFFFFFFFFF)
    if n & 63:
        full[n >> 6] = (np.uint64(1) << np.uint64(n & 63)) - np.uint64(1)
    packed = graph.packed ^ full
    idx = np.arange(n)
    packed[idx, idx >> 6] &= ~(np.uint64(1) << (idx & 63).astype(np.uint64))
    return Graph(n, packed, _trusted=True)


def permutation_distance(p: Permutation, q: Permutation) -> int:
    """||P - Q||_F^2 = 2 * number of points where the permutations differ."""
    if p.n != q.n:
        raise InputError("permutations must have equal size")
    return 2 * int((p.sigma != q.sigma).sum())


def summary_stats(graph: Graph) -> SummaryStats:
    """Degree/triangle summary: mean degree, density, global transitivity,
    biased sample skewness g1 of the degrees, and their relative std dev."""
    n = graph.n
    if n < 2:
        raise InputError("summary statistics need at least 2 vertices")
    deg = graph.degrees().astype(np.float64)
    mean_d = float(deg.mean())
    density = mean_d / (n - 1)
    t3, triples = kernels.triangle_and_triples(graph.packed, n)
    clustering = t3 / triples if triples else 0.0
    centered = deg - mean_d
    m2 = float((centered**2).mean())
    m3 = float((centered**3).mean())
    skewness = m3 / m2**1.5 if m2 > 0 else 0.0
    rsd = m2**0.5 / mean_d if mean_d > 0 else 0.0
    return SummaryStats(
        n=n,
        mean_degree=mean_d,
        density=density,
        clustering=clustering,
        skewness=skewness,
        rsd=rsd,
    )


def largest_component(graph: Graph) -> Graph:
    """Induced subgraph on the largest connected component (BFS on bitset rows).

    Vertices keep their relative order; isolated vertices form singleton
    components.
    """
    n = graph.n
    if n == 0:
        return graph
    unvisited = np.ones(n, dtype=bool)
    best: np.ndarray | None = None
    while unvisited.any():
        start = int(np.argmax(unvisited))
        comp = np.zeros(n, dtype=bool)
        comp[start] = True
        frontier = [start]
        while frontier:
            rows = graph.packed[np.asarray(frontier, dtype=np.intp)]
            reach = np.bitwise_or.reduce(rows, axis=0)
            nbrs = _bits.unpack_rows(reach[None, :], n)[0].astype(bool)
            new = nbrs & ~comp
            comp |= new
            frontier = np.nonzero(new)[0].tolist()
        unvisited &= ~comp
        if best is None or comp.sum() > best.sum():
            best = comp
    keep = np.nonzero(best)[0]
    dense = graph.to_dense()[np.ix_(keep, keep)]
    return Graph.from_dense(dense)
