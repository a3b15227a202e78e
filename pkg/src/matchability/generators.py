"""Random-graph generators for the simulation experiments.

Every model is a small frozen spec dataclass; :func:`generate` validates
and samples.  Sampling is a pure function of (spec, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import child_rng
from .channel import UniformChannelSpec, corrupt_uniform
from .errors import DomainError, InputError, ResourceError
from .graphs import Graph, Permutation, from_edge_list


@dataclass(frozen=True)
class ErGnp:
    """G(n, alpha): every pair is an edge independently with rate alpha."""

    n: int
    alpha: float


@dataclass(frozen=True)
class ErGnm:
    """G(n, m): uniform over graphs with exactly m edges."""

    n: int
    m: int


@dataclass(frozen=True, eq=False)
class BernoulliLambda:
    """Edge-independent Bernoulli graph with per-pair rate matrix."""

    Lambda: np.ndarray


@dataclass(frozen=True)
class RingLattice:
    """Circulant lattice: i ~ j iff cyclic distance min(|i-j|, n-|i-j|) <= d."""

    n: int
    d: int


@dataclass(frozen=True)
class NewmanWatts:
    """d-ring lattice plus Bernoulli(beta) shortcuts on non-lattice pairs."""

    n: int
    d: int
    beta: float


@dataclass(frozen=True)
class WattsStrogatz:
    """Starts from a (d/2)-radius ring lattice (degree d, d even); each
    lattice edge is rewired with probability beta to a uniform non-adjacent
    endpoint, keeping the edge when no candidate exists."""

    n: int
    d: int
    beta: float


@dataclass(frozen=True)
class PrefAttach:
    """Sequential preferential attachment: a complete seed clique on d+1
    vertices, then each arriving vertex sends d edges to distinct existing
    targets drawn with probability proportional to degree**gamma."""

    n: int
    gamma: float
    d: int


@dataclass(frozen=True)
class RandomRegular:
    """Uniform-ish d-regular graph via the configuration model."""

    n: int
    d: int


GeneratorSpec = (
    ErGnp | ErGnm | BernoulliLambda | RingLattice | NewmanWatts | WattsStrogatz
    | PrefAttach | RandomRegular
)


def _pair_count(n: int) -> int:
    return n * (n - 1) // 2


def validate(spec: GeneratorSpec) -> None:
    if isinstance(spec, ErGnp):
        if spec.n < 1 or not 0.0 <= spec.alpha <= 1.0:
            raise InputError(f"invalid ER spec {spec}")
    elif isinstance(spec, ErGnm):
        if spec.n < 1 or not 0 <= spec.m <= _pair_count(spec.n):
            raise InputError(f"invalid G(n, m) spec {spec}")
    elif isinstance(spec, BernoulliLambda):
        lam = np.asarray(spec.Lambda)
        if lam.ndim != 2 or lam.shape[0] != lam.shape[1]:
            raise InputError("Lambda must be square")
        if lam.min() < 0 or lam.max() > 1 or np.diagonal(lam).any():
            raise InputError("Lambda must be hollow with entries in [0, 1]")
        if not np.array_equal(lam, lam.T):
            raise InputError("Lambda must be symmetric")
    elif isinstance(spec, (RingLattice, NewmanWatts)):
        if spec.n < 2 or not 1 <= spec.d < spec.n:
            raise InputError(f"lattice needs 1 <= d < n, got {spec}")
        if isinstance(spec, NewmanWatts) and not 0.0 <= spec.beta <= 1.0:
            raise InputError("beta must lie in [0, 1]")
    elif isinstance(spec, WattsStrogatz):
        if spec.n < 2 or not 1 <= spec.d < spec.n:
            raise InputError(f"WS needs 1 <= d < n, got {spec}")
        if spec.d % 2:
            raise InputError("WS degree d must be even (d/2 neighbors per side)")
        if not 0.0 <= spec.beta <= 1.0:
            raise InputError("beta must lie in [0, 1]")
    elif isinstance(spec, PrefAttach):
        if spec.d < 1 or spec.d + 1 > spec.n:
            raise InputError(f"PA needs 1 <= d and d+1 <= n, got {spec}")
        if spec.gamma < 0:
            raise InputError("PA exponent gamma must be >= 0")
    elif isinstance(spec, RandomRegular):
        if not 0 <= spec.d < spec.n or (spec.n * spec.d) % 2:
            raise InputError(f"regular graph needs 0 <= d < n and even n*d, got {spec}")
    else:
        raise InputError(f"unknown generator spec {spec!r}")


def generate(spec: GeneratorSpec, seed: int) -> Graph:
    """Sample one graph from the model."""
    validate(spec)
    rng = child_rng(seed)
    if isinstance(spec, ErGnp):
        return _bernoulli_dense(rng, spec.n, spec.alpha)
    if isinstance(spec, ErGnm):
        return _gnm(rng, spec.n, spec.m)
    if isinstance(spec, BernoulliLambda):
        lam = np.asarray(spec.Lambda, dtype=np.float64)
        u = _upper_uniforms(rng, lam.shape[0])
        return Graph.from_dense((u < lam).astype(np.uint8))
    if isinstance(spec, RingLattice):
        return _ring_lattice(spec.n, spec.d)
    if isinstance(spec, NewmanWatts):
        lattice = _ring_lattice(spec.n, spec.d).to_dense()
        shortcuts = _upper_uniforms(rng, spec.n) < spec.beta
        dense = lattice | (shortcuts & ~lattice.astype(bool))
        return Graph.from_dense(dense.astype(np.uint8))
    if isinstance(spec, WattsStrogatz):
        return _watts_strogatz(rng, spec.n, spec.d, spec.beta)
    if isinstance(spec, PrefAttach):
        return _pref_attach(rng, spec.n, spec.gamma, spec.d)
    if isinstance(spec, RandomRegular):
        return _random_regular(rng, spec.n, spec.d)
    raise InputError(f"unknown generator spec {spec!r}")


def _upper_uniforms(rng, n: int) -> np.ndarray:
    """Symmetric matrix of uniforms on the off-diagonal, 1.0 on the diagonal."""
    u = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    u[iu] = rng.random(len(iu[0]))
    u.T[iu] = u[iu]
    return u


def _bernoulli_dense(rng, n: int, alpha: float) -> Graph:
    return Graph.from_dense((_upper_uniforms(rng, n) < alpha).astype(np.uint8))


def _gnm(rng, n: int, m: int) -> Graph:
    total = _pair_count(n)
    if m == 0 or total == 0:
        return Graph.empty(n)
    if m > total // 64:
        codes = rng.permutation(total)[:m]
    else:
        chosen: dict[int, None] = {}
        while len(chosen) < m:
            batch = rng.integers(0, total, size=max(64, int(1.3 * (m - len(chosen)))))
            for c in batch.tolist():
                chosen[c] = None
                if len(chosen) == m:
                    break
        codes = np.fromiter(chosen.keys(), dtype=np.int64, count=m)
    offsets = np.concatenate([[0], np.cumsum(n - 1 - np.arange(n - 1))])
    i = np.searchsorted(offsets, codes, side="right") - 1
    j = codes - offsets[i] + i + 1
    return from_edge_list(np.column_stack([i, j]), n=n)


def _ring_lattice(n: int, d: int) -> Graph:
    edges = []
    for off in range(1, min(d, n // 2) + 1):
        i = np.arange(n, dtype=np.int64)
        edges.append(np.column_stack([i, (i + off) % n]))
    return from_edge_list(np.concatenate(edges), n=n)


def _watts_strogatz(rng, n: int, d: int, beta: float) -> Graph:
    radius = d // 2
    adj = _ring_lattice(n, radius).to_dense().astype(bool)
    for off in range(1, radius + 1):
        for i in range(n):
            j = (i + off) % n
            if j == i or not adj[i, j]:
                continue
            if rng.random() >= beta:
                continue
            candidates = np.nonzero(~adj[i])[0]
            candidates = candidates[candidates != i]
            if candidates.size == 0:
                continue
            w = int(candidates[rng.integers(candidates.size)])
            adj[i, j] = adj[j, i] = False
            adj[i, w] = adj[w, i] = True
    return Graph.from_dense(adj.astype(np.uint8))


def _pref_attach(rng, n: int, gamma: float, d: int) -> Graph:
    n0 = d + 1
    deg = np.zeros(n, dtype=np.float64)
    deg[:n0] = d
    edges = [(i, j) for i in range(n0) for j in range(i + 1, n0)]
    for t in range(n0, n):
        weights = deg[:t] ** gamma
        # weighted sampling without replacement (exponential-race keys)
        keys = rng.random(t) ** (1.0 / weights)
        targets = np.argpartition(keys, t - d)[t - d :]
        for v in targets.tolist():
            edges.append((v, t))
            deg[v] += 1
        deg[t] = d
    return from_edge_list(edges, n=n)


def _random_regular(rng, n: int, d: int) -> Graph:
    if d == 0:
        return Graph.empty(n)
    if d <= max(2.0, n ** (1.0 / 3.0)):
        return _config_model_restart(rng, n, d)
    return _config_model_swaps(rng, n, d)


def _config_model_restart(rng, n: int, d: int, max_tries: int = 2000) -> Graph:
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_tries):
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        if (u == v).any():
            continue
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        codes = lo * n + hi
        if len(np.unique(codes)) != len(codes):
            continue
        return from_edge_list(np.column_stack([u, v]), n=n)
    raise ResourceError(f"configuration model failed after {max_tries} restarts")


def _config_model_swaps(rng, n: int, d: int) -> Graph:
    """Pair stubs once, then repair collisions with degree-preserving swaps."""
    perm = rng.permutation(np.repeat(np.arange(n, dtype=np.int64), d))
    u, v = perm[0::2].copy(), perm[1::2].copy()
    m = len(u)
    budget = 200 * m
    while budget > 0:
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        codes = lo * n + hi
        order = np.argsort(codes, kind="stable")
        sorted_codes = codes[order]
        dup = np.zeros(m, dtype=bool)
        dup[order[1:]] = sorted_codes[1:] == sorted_codes[:-1]
        bad = np.nonzero((u == v) | dup)[0]
        if bad.size == 0:
            return from_edge_list(np.column_stack([u, v]), n=n)
        existing = set(codes[~((u == v) | dup)].tolist())
        for e in bad.tolist():
            if budget <= 0:
                break
            budget -= 1
            o = int(rng.integers(m))
            if o == e:
                continue
            # swap partners: (u_e, v_o), (u_o, v_e)
            a, b = u[e], v[o]
            c, dd = u[o], v[e]
            if a == b or c == dd:
                continue
            c1 = min(a, b) * n + max(a, b)
            c2 = min(c, dd) * n + max(c, dd)
            if c1 == c2 or c1 in existing or c2 in existing:
                continue
            v[e], v[o] = v[o], v[e]
            existing.add(c1)
            existing.add(c2)
    raise ResourceError("random regular graph: swap repair budget exhausted")


def noise_hardening(graph: Graph, p: float, seed: int) -> Graph:
    """Inject ER noise at the rate that restores matchability at channel
    noise p: beta = sqrt(log(n) / ((1/2 - p)^2 n)), A' ~ C(A, beta, I)."""
    if not 0.0 <= p < 0.5:
        raise DomainError(f"hardening is defined for p in [0, 1/2), got {p}")
    n = graph.n
    beta = math.sqrt(math.log(n) / ((0.5 - p) ** 2 * n))
    if beta > 1.0:
        raise DomainError(
            f"computed shortcut rate beta={beta:.6g} exceeds 1; "
            f"n={n} is too small for p={p}"
        )
    return corrupt_uniform(graph, UniformChannelSpec(beta, Permutation.identity(n)), seed)
