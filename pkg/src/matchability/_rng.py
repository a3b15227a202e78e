"""Deterministic seed derivation.

Two layers of randomness are used in this package:

* numpy ``Generator`` objects for everything drawn sequentially
  (permutation samples, generator models, solver restarts).  Children are
  derived from ``(seed, *path)`` tuples so each task owns an independent
  stream regardless of execution order or thread count.
* a counter-based splitmix64 stream for the corrupting channels, where
  every vertex pair (i, j) gets its own 53-bit uniform derived from
  (seed, pair index).  The kernels in :mod:`matchability.kernels`
  re-implement the same mixing; the functions here are the reference.
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)
TWO53 = float(1 << 53)

_U64_MASK = 0xFFFFFFFFFFFFFFFF


def mix64(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer over a uint64 array (wraps modulo 2**64)."""
    z = (z ^ (z >> np.uint64(30))) * MIX_1
    z = (z ^ (z >> np.uint64(27))) * MIX_2
    return z ^ (z >> np.uint64(31))


def stream_seed(seed: int, stream: int) -> int:
    """Derive the effective uint64 seed of a named channel stream."""
    z = np.array([seed & _U64_MASK, stream & _U64_MASK], dtype=np.uint64)
    base = mix64(z[:1] + GOLDEN)
    return int(mix64(base + z[1:])[0])


def pair_uniforms(seed: int, keys: np.ndarray) -> np.ndarray:
    """53-bit uniforms in [0, 1) for an array of uint64 pair keys.

    Equals the splitmix64 output sequence at indices ``keys + 1``, so the
    result does not depend on evaluation order.
    """
    keys = np.atleast_1d(np.asarray(keys, dtype=np.uint64))
    base = np.uint64(int(seed) & _U64_MASK)
    u = mix64(base + (keys + np.uint64(1)) * GOLDEN)
    return (u >> np.uint64(11)).astype(np.float64) / TWO53


def child_rng(seed: int, *path: int) -> np.random.Generator:
    """numpy Generator for the sub-task identified by ``path`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence((seed, *path)))


def derive_seed(seed: int, *path: int) -> int:
    """Fold a task path into a fresh 64-bit seed (for APIs that take ints)."""
    s = seed & _U64_MASK
    for x in path:
        s = stream_seed(s, x)
    return s
