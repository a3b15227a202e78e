import math
from itertools import permutations as iter_permutations

import numpy as np
import pytest

from conftest import random_graph
from matchability.channel import (
    HeterogeneousChannelSpec,
    UniformChannelSpec,
    correlated_bernoulli_pair,
    corrupt_heterogeneous,
    corrupt_uniform,
    loglikelihood_uniform,
    profile_loglikelihood,
)
from matchability.errors import DomainError, InputError
from matchability.graphs import (
    Graph,
    Permutation,
    complement,
    disagreements,
    from_edge_list,
    relabel,
)

PAIRS = lambda n: n * (n - 1) // 2  # noqa: E731


def flip_fraction(a: Graph, b: Graph) -> float:
    return disagreements(a, b) / 2 / PAIRS(a.n)


class TestCorruptUniform:
    def test_p_zero_is_exact_shuffle(self, rng):
        g = random_graph(rng, 30)
        q = Permutation(rng.permutation(30))
        b = corrupt_uniform(g, UniformChannelSpec(0.0, q), seed=5)
        # B equals Q A Q^T, i.e. the relabel by Q^{-1}
        assert b == relabel(g, q.inverse())

    def test_p_one_is_relabeled_complement(self, rng):
        g = random_graph(rng, 18)
        q = Permutation(rng.permutation(18))
        b = corrupt_uniform(g, UniformChannelSpec(1.0, q), seed=5)
        assert b == relabel(complement(g), q.inverse())

    def test_empirical_flip_rate_within_3se(self, rng):
        n = 500
        g = random_graph(rng, n, p=0.3)
        p = 0.1
        b = corrupt_uniform(g, UniformChannelSpec(p, Permutation.identity(n)), seed=909)
        se = math.sqrt(p * (1 - p) / PAIRS(n))
        assert abs(flip_fraction(g, b) - p) < 3 * se

    def test_deterministic_in_seed(self, rng):
        g = random_graph(rng, 25)
        spec = UniformChannelSpec(0.3, Permutation.identity(25))
        assert corrupt_uniform(g, spec, seed=7) == corrupt_uniform(g, spec, seed=7)
        assert corrupt_uniform(g, spec, seed=7) != corrupt_uniform(g, spec, seed=8)

    def test_bad_p_rejected(self):
        with pytest.raises(InputError):
            UniformChannelSpec(1.5, Permutation.identity(3))

    def test_size_mismatch(self, rng):
        with pytest.raises(InputError):
            corrupt_uniform(random_graph(rng, 5), UniformChannelSpec(0.1, Permutation.identity(4)), 0)

    def test_shuffle_commute_distributional(self, rng):
        # corrupting then shuffling flips as many pairs as corrupting alone
        g = random_graph(rng, 40)
        q = Permutation(rng.permutation(40))
        spec_q = UniformChannelSpec(0.2, q)
        spec_i = UniformChannelSpec(0.2, Permutation.identity(40))
        base = relabel(g, q.inverse())
        flips_q = [
            flip_fraction(base, corrupt_uniform(g, spec_q, seed=s)) for s in range(60)
        ]
        flips_i = [flip_fraction(g, corrupt_uniform(g, spec_i, seed=s + 60)) for s in range(60)]
        se = math.sqrt(2 * 0.2 * 0.8 / PAIRS(40) / 60)
        assert abs(np.mean(flips_q) - np.mean(flips_i)) < 4 * se


class TestCorruptHeterogeneous:
    def test_noiseless_is_exact_shuffle(self, rng):
        g = random_graph(rng, 16)
        q = Permutation(rng.permutation(16))
        b = corrupt_heterogeneous(g, HeterogeneousChannelSpec(0.0, 0.0, q), seed=3)
        assert b == relabel(g, q.inverse())

    def test_constant_matches_uniform_rates(self, rng):
        n = 200
        g = random_graph(rng, n, p=0.35)
        ident = Permutation.identity(n)
        p = 0.15
        rates_h = [
            flip_fraction(g, corrupt_heterogeneous(g, HeterogeneousChannelSpec(p, p, ident), s))
            for s in range(30)
        ]
        rates_u = [
            flip_fraction(g, corrupt_uniform(g, UniformChannelSpec(p, ident), 1000 + s))
            for s in range(30)
        ]
        se = math.sqrt(2 * p * (1 - p) / PAIRS(n) / 30)
        assert abs(np.mean(rates_h) - np.mean(rates_u)) < 4 * se

    def test_deterministic_edge_flip(self):
        g = from_edge_list([(0, 1)], n=3)
        psi2 = np.zeros((3, 3))
        psi2[0, 1] = psi2[1, 0] = 1.0
        spec = HeterogeneousChannelSpec(np.zeros((3, 3)), psi2, Permutation.identity(3))
        for seed in range(10):
            assert corrupt_heterogeneous(g, spec, seed).edge_count() == 0

    def test_matrix_validation(self):
        ident = Permutation.identity(3)
        with pytest.raises(InputError):
            HeterogeneousChannelSpec(np.full((3, 3), 0.2), 0.0, ident)  # nonzero diagonal
        with pytest.raises(InputError):
            HeterogeneousChannelSpec(np.zeros((2, 2)), 0.0, ident)  # shape mismatch
        with pytest.raises(InputError):
            HeterogeneousChannelSpec(1.2, 0.0, ident)  # out of range


class TestCorrelatedPair:
    def test_perfect_correlation_copies(self):
        ident = Permutation.identity(50)
        a, b = correlated_bernoulli_pair(0.4, 1.0, ident, seed=11)
        assert a == b

    def test_zero_correlation_independent(self):
        ident = Permutation.identity(120)
        corrs = []
        for s in range(25):
            a, b = correlated_bernoulli_pair(0.5, 0.0, ident, seed=s)
            iu = np.triu_indices(120, 1)
            corrs.append(np.corrcoef(a.to_dense()[iu], b.to_dense()[iu])[0, 1])
        assert abs(np.mean(corrs)) < 3 / math.sqrt(PAIRS(120) * 25)

    def test_marginal_rate_and_correlation(self):
        # Lambda=0.5, R=0.6: B keeps marginal density 0.5, pairs correlate at 0.6
        n, reps = 200, 25
        ident = Permutation.identity(n)
        corrs, densities = [], []
        for s in range(reps):
            a, b = correlated_bernoulli_pair(0.5, 0.6, ident, seed=s)
            iu = np.triu_indices(n, 1)
            corrs.append(np.corrcoef(a.to_dense()[iu], b.to_dense()[iu])[0, 1])
            densities.append(b.edge_count() / PAIRS(n))
        assert abs(np.mean(corrs) - 0.6) < 0.02
        assert abs(np.mean(densities) - 0.5) < 0.01

    def test_matrix_parameters(self, rng):
        n = 40
        lam = np.triu(rng.uniform(0.2, 0.8, (n, n)), 1)
        lam = lam + lam.T
        r = np.triu(rng.uniform(0.0, 1.0, (n, n)), 1)
        r = r + r.T
        a, b = correlated_bernoulli_pair(lam, r, Permutation.identity(n), seed=2)
        assert a.n == b.n == n

    def test_range_validation(self):
        with pytest.raises(InputError):
            correlated_bernoulli_pair(1.4, 0.5, Permutation.identity(4), seed=0)


class TestLikelihood:
    def test_identical_graphs_formula_value(self, rng):
        g = random_graph(rng, 14)
        e = g.edge_count()
        n = g.n
        p = 0.3
        expected = e * (math.log(0.7) - math.log(0.3)) + n * (n - 1) * math.log(0.3) / 2
        got = loglikelihood_uniform(g, g, p, Permutation.identity(n))
        assert abs(got - expected) < 1e-9

    def test_single_pair_value(self):
        g = from_edge_list([(0, 1)], n=2)
        assert abs(loglikelihood_uniform(g, g, 0.4, Permutation.identity(2)) - math.log(0.6)) < 1e-12

    def test_domain_errors(self, rng):
        g = random_graph(rng, 6)
        for p in (0.0, 1.0):
            with pytest.raises(DomainError):
                loglikelihood_uniform(g, g, p, Permutation.identity(6))

    def test_rank_equality_with_disagreements(self, rng):
        # for p < 1/2 the likelihood orders permutations opposite to disagreements
        n = 5
        a = random_graph(rng, n)
        b = corrupt_uniform(a, UniformChannelSpec(0.2, Permutation(rng.permutation(n))), seed=3)
        pairs = []
        for sigma in iter_permutations(range(n)):
            q = Permutation(np.array(sigma))
            pairs.append(
                (loglikelihood_uniform(a, b, 0.1, q), -disagreements(a, relabel(b, q)))
            )
        ranked_by_ll = sorted(range(len(pairs)), key=lambda i: pairs[i][0])
        ranked_by_dis = sorted(range(len(pairs)), key=lambda i: pairs[i][1])
        lls = [pairs[i][0] for i in ranked_by_ll]
        diss = [pairs[i][1] for i in ranked_by_dis]
        # equal objectives tie, so compare the sorted value sequences pairwise
        for i, j in zip(ranked_by_ll, ranked_by_dis):
            assert (pairs[i][0] == pairs[j][0]) == (pairs[i][1] == pairs[j][1])
        assert lls == sorted(lls)
        assert diss == sorted(diss)

    def test_true_permutation_maximizes_at_noiseless(self, rng):
        n = 6
        a = random_graph(rng, n)
        q = Permutation(rng.permutation(n))
        b = corrupt_uniform(a, UniformChannelSpec(0.0, q), seed=0)
        best = max(
            (loglikelihood_uniform(a, b, 0.1, Permutation(np.array(s))), s)
            for s in iter_permutations(range(n))
        )
        assert loglikelihood_uniform(a, b, 0.1, q) == best[0]

    def test_profile_loglikelihood_identity(self, rng):
        a = random_graph(rng, 12)
        b = random_graph(rng, 12)
        q = Permutation(rng.permutation(12))
        expected = -math.log(2) * disagreements(a, relabel(b, q))
        assert abs(profile_loglikelihood(a, b, q) - expected) < 1e-12
        # matches the nuisance-profiled sum over pairs
        rel = relabel(b, q).to_dense()
        ad = a.to_dense()
        iu = np.triu_indices(12, 1)
        direct = float(2 * (ad[iu] != rel[iu]).sum() * math.log(0.5))
        assert abs(profile_loglikelihood(a, b, q) - direct) < 1e-12
