"""Monte-Carlo and exact matchability estimators.

The central quantity is the disagreement count ||A - Q^T A Q||_F^2 for
k-shuffles Q drawn uniformly from Pi_{n,k} (permutations moving exactly
k labels).  From a shared sample we report the mean half-count, the
minimum full count, and the induced noise-tolerance bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from ._rng import child_rng
from .errors import DomainError, InputError, ResourceError
from .graphs import Graph, Permutation, shuffle_disagreements

ENUMERATION_BUDGET = 10_000_000


def derangement_count(k: int) -> int:
    """Number of fixed-point-free permutations of k elements."""
    if k == 0:
        return 1
    if k == 1:
        return 0
    prev2, prev1 = 1, 0
    for i in range(2, k + 1):
        prev2, prev1 = prev1, (i - 1) * (prev1 + prev2)
    return prev1


def pi_nk_count(n: int, k: int) -> int:
    """|Pi_{n,k}| = C(n, k) * D(k)."""
    return math.comb(n, k) * derangement_count(k)


def _check_nk(n: int, k: int) -> None:
    if not 2 <= k <= n:
        raise InputError(f"need 2 <= k <= n, got k={k}, n={n}")


def sample_pi_nk(n: int, k: int, seed: int | np.random.Generator) -> Permutation:
    """Uniform draw from Pi_{n,k}: a uniform k-subset carrying a uniform
    derangement (rejection-sampled, ~e tries)."""
    _check_nk(n, k)
    rng = seed if isinstance(seed, np.random.Generator) else child_rng(seed)
    subset = rng.choice(n, size=k, replace=False)
    idx = np.arange(k)
    while True:
        der = rng.permutation(k)
        if (der != idx).all():
            break
    sigma = np.arange(n, dtype=np.int64)
    sigma[subset] = subset[der]
    return Permutation(sigma)


def enumerate_pi_nk(n: int, k: int) -> Iterator[Permutation]:
    """All of Pi_{n,k}, subsets in lexicographic order."""
    _check_nk(n, k)
    idx = tuple(range(k))
    for subset in combinations(range(n), k):
        sub = np.asarray(subset, dtype=np.int64)
        for der in permutations(idx):
            if any(der[i] == i for i in idx):
                continue
            sigma = np.arange(n, dtype=np.int64)
            sigma[sub] = sub[np.asarray(der)]
            yield Permutation(sigma)


class XhatEstimate(NamedTuple):
    """Shared-sample summary: mean of half-counts, min of full counts."""

    mean: float
    minimum: int
    m_used: int


def xhat_k(graph: Graph, k: int, m: int, seed: int) -> XhatEstimate:
    """Monte-Carlo mean of (1/2)||A - Q^T A Q||_F^2 and the sample minimum
    of the full count over m draws from Pi_{n,k}.

    When m covers all of Pi_{n,k} (and the enumeration fits the budget)
    the sample is exhaustive, making the minimum exact.
    """
    _check_nk(graph.n, k)
    if m < 1:
        raise InputError("sample count m must be >= 1")
    n = graph.n
    count = pi_nk_count(n, k)
    if count <= m and count <= ENUMERATION_BUDGET:
        fulls = [shuffle_disagreements(graph, q) for q in enumerate_pi_nk(n, k)]
    else:
        fulls = [
            shuffle_disagreements(graph, sample_pi_nk(n, k, child_rng(seed, k, i)))
            for i in range(m)
        ]
    total = sum(fulls)
    return XhatEstimate(mean=total / (2 * len(fulls)), minimum=min(fulls), m_used=len(fulls))


def phat_star_from_xmin(n: int, k: int, x_min: float) -> float:
    """Noise bound 1/2 - 1/2 sqrt(1 - exp(-6k log(n) / x_min)); 0 at x_min=0."""
    if x_min < 0:
        raise InputError("disagreement count cannot be negative")
    if x_min == 0:
        return 0.0
    t = 6.0 * k * math.log(n) / x_min
    return 0.5 - 0.5 * math.sqrt(-math.expm1(-t))


def phat_star(graph: Graph, k: int, m: int, seed: int) -> float:
    """Sampled noise-tolerance bound from the same sample as :func:`xhat_k`."""
    est = xhat_k(graph, k, m, seed)
    return phat_star_from_xmin(graph.n, k, est.minimum)


def theorem1_threshold(n: int, k: int, p: float) -> float:
    """Disagreement threshold 6 k log(n) / log(1 / (4 p (1-p)))."""
    if not 0.0 < p < 0.5:
        raise DomainError(f"threshold defined for p in (0, 1/2), got {p}")
    return 6.0 * k * math.log(n) / math.log(1.0 / (4.0 * p * (1.0 - p)))


def pstar_exact(graph: Graph, k: int) -> float:
    """Exact noise bound by exhausting Pi_{n,k} (guarded by the budget)."""
    _check_nk(graph.n, k)
    count = pi_nk_count(graph.n, k)
    if count > ENUMERATION_BUDGET:
        raise ResourceError(
            f"|Pi_{{n,k}}| = {count} exceeds the enumeration budget {ENUMERATION_BUDGET}"
        )
    x_min: int | None = None
    for q in enumerate_pi_nk(graph.n, k):
        x = shuffle_disagreements(graph, q)
        if x_min is None or x < x_min:
            x_min = x
            if x_min == 0:
                return 0.0
    return phat_star_from_xmin(graph.n, k, x_min)


def u_q_size(perm: Permutation) -> int:
    """|U_Q|: vertex pairs whose edge status can change under the shuffle.

    Exact set count from the cycle structure: C(k,2) + k(n-k) minus the
    number of 2-cycles inside the moved set.
    """
    sigma = perm.sigma
    n = perm.n
    moved = perm.moved_indices()
    k = len(moved)
    idx = np.arange(n)
    transpositions = int(((sigma[sigma] == idx) & (sigma != idx)).sum()) // 2
    return k * (k - 1) // 2 + k * (n - k) - transpositions


@dataclass(frozen=True)
class ProfileRecord:
    n: int
    k: int
    m: int
    xhat_mean: float
    xhat_min: int
    phat_star: float

    @property
    def xhat_norm(self) -> float:
        """Mean half-count normalized by k log(n)."""
        return self.xhat_mean / (self.k * math.log(self.n))

    @property
    def automorphism_suspect(self) -> bool:
        """A zero minimum means some sampled shuffle is a graph automorphism."""
        return self.xhat_min == 0

    def threshold(self, p: float) -> float:
        return theorem1_threshold(self.n, self.k, p)


@dataclass(frozen=True)
class MatchabilityProfile:
    n: int
    records: tuple[ProfileRecord, ...]


def matchability_profile(graph: Graph, ks: Sequence[int], m: int, seed: int) -> MatchabilityProfile:
    """One record per k, both statistics from a shared sample."""
    if not ks:
        raise InputError("ks must be non-empty")
    records = []
    for k in ks:
        est = xhat_k(graph, k, m, seed)
        records.append(
            ProfileRecord(
                n=graph.n,
                k=k,
                m=est.m_used,
                xhat_mean=est.mean,
                xhat_min=est.minimum,
                phat_star=phat_star_from_xmin(graph.n, k, est.minimum),
            )
        )
    return MatchabilityProfile(n=graph.n, records=tuple(records))


PROFILE_CSV_HEADER = "n,k,m,xhat_mean,xhat_norm,xhat_min,phat_star"


def profile_to_csv(profile: MatchabilityProfile) -> str:
    lines = [PROFILE_CSV_HEADER]
    for r in profile.records:
        lines.append(
            f"{r.n},{r.k},{r.m},{r.xhat_mean!r},{r.xhat_norm!r},{r.xhat_min},{r.phat_star!r}"
        )
    return "\n".join(lines) + "\n"
