"""Corrupting channels: samplers and likelihood evaluation.

A channel bit-flips vertex pairs of A independently and then shuffles the
labels: B = P(X o (1-A) + (1-X) o A)P^T.  Each unordered pair draws one
uniform from a counter-based stream keyed by (seed, pair index), so the
output is reproducible independent of iteration order and thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._rng import stream_seed
from .errors import DomainError, InputError
from .graphs import Graph, Permutation, common_edges_trace, disagreements, relabel

_STREAM_CHANNEL = 0
_STREAM_BASE_GRAPH = 1

PsiLike = float | np.ndarray


@dataclass(frozen=True)
class UniformChannelSpec:
    """Uniform corruption: every pair flips with the same probability p."""

    p: float
    P: Permutation

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InputError(f"flip probability must be in [0, 1], got {self.p}")


@dataclass(frozen=True)
class HeterogeneousChannelSpec:
    """Pair-specific corruption rates: psi1 flips non-edges, psi2 edges.

    Either field may be a scalar (the compact constant-rate variant) or a
    symmetric hollow matrix of per-pair probabilities.
    """

    psi1: PsiLike
    psi2: PsiLike
    P: Permutation

    def __post_init__(self):
        _validate_psi(self.psi1, self.P.n, "psi1")
        _validate_psi(self.psi2, self.P.n, "psi2")


def _validate_psi(psi: PsiLike, n: int, name: str) -> None:
    if np.isscalar(psi):
        if not 0.0 <= float(psi) <= 1.0:
            raise InputError(f"{name} must lie in [0, 1]")
        return
    psi = np.asarray(psi)
    if psi.shape != (n, n):
        raise InputError(f"{name} must be {n}x{n}")
    if psi.min() < 0.0 or psi.max() > 1.0:
        raise InputError(f"{name} entries must lie in [0, 1]")
    if np.diagonal(psi).any():
        raise InputError(f"{name} must have a zero diagonal")
    if not np.array_equal(psi, psi.T):
        raise InputError(f"{name} must be symmetric")


def _apply_shuffle(n: int, packed: np.ndarray, P: Permutation) -> Graph:
    graph = Graph(n, packed, _trusted=True)
    if P.is_identity():
        return graph
    return relabel(graph, P.inverse())


def corrupt_uniform(graph: Graph, spec: UniformChannelSpec, seed: int) -> Graph:
    """Sample B ~ C(A, p, P)."""
    if spec.P.n != graph.n:
        raise InputError("channel permutation size does not match graph")
    noisy = kernels.corrupt_two_rate(
        graph.packed, graph.n, spec.p, spec.p, stream_seed(seed, _STREAM_CHANNEL)
    )
    return _apply_shuffle(graph.n, noisy, spec.P)


def corrupt_heterogeneous(graph: Graph, spec: HeterogeneousChannelSpec, seed: int) -> Graph:
    """Sample B ~ C(A, psi1, psi2, P)."""
    if spec.P.n != graph.n:
        raise InputError("channel permutation size does not match graph")
    eff = stream_seed(seed, _STREAM_CHANNEL)
    if np.isscalar(spec.psi1) and np.isscalar(spec.psi2):
        noisy = kernels.corrupt_two_rate(
            graph.packed, graph.n, float(spec.psi1), float(spec.psi2), eff
        )
    else:
        psi1 = _as_matrix(spec.psi1, graph.n)
        psi2 = _as_matrix(spec.psi2, graph.n)
        noisy = kernels.corrupt_matrix_rate(graph.packed, graph.n, psi1, psi2, eff)
    return _apply_shuffle(graph.n, noisy, spec.P)


def _as_matrix(psi: PsiLike, n: int) -> np.ndarray:
    if np.isscalar(psi):
        m = np.full((n, n), float(psi))
        np.fill_diagonal(m, 0.0)
        return m
    return np.asarray(psi, dtype=np.float64)


def correlated_bernoulli_pair(
    Lambda: PsiLike, R: PsiLike, P: Permutation, seed: int
) -> tuple[Graph, Graph]:
    """Sample R-correlated Bernoulli(Lambda) graphs (A, B).

    A ~ Bernoulli(Lambda); conditionally B passes A through the
    heterogeneous channel with psi1 = (1-R) o Lambda and
    psi2 = (1-R) o (1-Lambda), so marginally B ~ Bernoulli(Lambda) with
    per-pair correlation R.
    """
    n = P.n
    _validate_psi(Lambda, n, "Lambda")
    _validate_psi(R, n, "R")
    base_seed = stream_seed(seed, _STREAM_BASE_GRAPH)
    empty = Graph.empty(n)
    if np.isscalar(Lambda):
        a_packed = kernels.corrupt_two_rate(empty.packed, n, float(Lambda), 0.0, base_seed)
    else:
        lam = _as_matrix(Lambda, n)
        a_packed = kernels.corrupt_matrix_rate(empty.packed, n, lam, np.zeros((n, n)), base_seed)
    a = Graph(n, a_packed, _trusted=True)
    if np.isscalar(Lambda) and np.isscalar(R):
        psi1: PsiLike = (1.0 - float(R)) * float(Lambda)
        psi2: PsiLike = (1.0 - float(R)) * (1.0 - float(Lambda))
    else:
        lam = _as_matrix(Lambda, n)
        r = _as_matrix(R, n)
        psi1 = (1.0 - r) * lam
        psi2 = (1.0 - r) * (1.0 - lam)
        np.fill_diagonal(psi2, 0.0)
    b = corrupt_heterogeneous(a, HeterogeneousChannelSpec(psi1, psi2, P), seed)
    return a, b


def loglikelihood_uniform(a: Graph, b: Graph, p: float, P: Permutation) -> float:
    """Closed-form log-likelihood of (p, P) given observed (A, B):

        l(p, P) = 1/2 tr(A P^T B P) (log(1-p) - log p) + n(n-1) log(p) / 2

    For fixed p < 1/2 this ranks permutations opposite to the disagreement
    count, so its argmax is the graph-matching minimizer.
    """
    if a.n != b.n:
        raise InputError("graphs must have equal order")
    if P.n != a.n:
        raise InputError("permutation size does not match graphs")
    if not 0.0 < p < 1.0:
        raise DomainError("log-likelihood diverges at p in {0, 1}")
    trace = common_edges_trace(a, relabel(b, P))
    n = a.n
    return 0.5 * trace * (math.log(1.0 - p) - math.log(p)) + n * (n - 1) * math.log(p) / 2.0


def profile_loglikelihood(a: Graph, b: Graph, P: Permutation) -> float:
    """Heterogeneous-channel profile log-likelihood: -log(2) ||A - P^T B P||_F^2."""
    return -math.log(2.0) * disagreements(a, relabel(b, P))
