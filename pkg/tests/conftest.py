import numpy as np
import pytest

from matchability.graphs import Graph


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4) -> Graph:
    """Dense-oracle ER graph used as test input (independent of generators)."""
    dense = (rng.random((n, n)) < p).astype(np.uint8)
    dense = np.triu(dense, 1)
    return Graph.from_dense(dense + dense.T)


def dense_disagreements(a: Graph, b: Graph) -> int:
    return int((a.to_dense() != b.to_dense()).sum())


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
