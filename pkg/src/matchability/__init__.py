"""Corrupting-channel graph models, matchability estimators, and matching.

The package centers on three questions about an errorfully observed
network: how a noisy copy is generated (``channel``), how much noise a
graph can tolerate while remaining de-anonymizable (``estimators``), and
how well an approximate matcher actually recovers the vertex
correspondence (``matcher``).  ``harness``/``cli`` reproduce the
simulation and real-data experiments at desk scale.
"""

from .channel import (
    HeterogeneousChannelSpec,
    UniformChannelSpec,
    correlated_bernoulli_pair,
    corrupt_heterogeneous,
    corrupt_uniform,
    loglikelihood_uniform,
    profile_loglikelihood,
)
from .datasets import load_karate
from .edgelist import read_edge_list, write_edge_list
from .errors import DomainError, InputError, ResourceError
from .estimators import (
    MatchabilityProfile,
    ProfileRecord,
    XhatEstimate,
    enumerate_pi_nk,
    matchability_profile,
    phat_star,
    phat_star_from_xmin,
    pi_nk_count,
    profile_to_csv,
    pstar_exact,
    sample_pi_nk,
    theorem1_threshold,
    u_q_size,
    xhat_k,
)
from .generators import (
    BernoulliLambda,
    ErGnm,
    ErGnp,
    NewmanWatts,
    PrefAttach,
    RandomRegular,
    RingLattice,
    WattsStrogatz,
    generate,
    noise_hardening,
)
from .graphs import (
    Graph,
    Permutation,
    SummaryStats,
    complement,
    disagreements,
    from_edge_list,
    largest_component,
    permutation_distance,
    relabel,
    shuffle_disagreements,
    summary_stats,
)
from .matcher import (
    DoublyStochastic,
    FaqOptions,
    MatchResult,
    accuracy_by_degree,
    brute_force_mle,
    faq_match,
    lap_solve,
    match_accuracy,
    random_doubly_stochastic,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
