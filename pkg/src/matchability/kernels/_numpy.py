"""Pure-numpy kernel implementations (fallback backend).

Vectorized but block-chunked so peak memory stays bounded for large n.
Semantics are the contract for the numba backend: both must produce
bit-identical outputs for identical inputs.
"""

from __future__ import annotations

import numpy as np

from .._bits import get_bits, n_words, pack_rows, popcount, unpack_rows
from .._rng import GOLDEN, TWO53, mix64

BACKEND_NAME = "numpy"

# chunk sizes keep uint64 temporaries around the 64 MB mark
_CHUNK_ELEMS = 8_000_000


def disagreement_count(a: np.ndarray, b: np.ndarray) -> int:
    """Full squared-Frobenius count ||A - B||_F^2 for binary matrices."""
    return int(popcount(a ^ b).sum(dtype=np.uint64))


def common_edge_trace(a: np.ndarray, b: np.ndarray) -> int:
    """tr(A B) = number of ordered index pairs where both bits are 1."""
    return int(popcount(a & b).sum(dtype=np.uint64))


def degrees(packed: np.ndarray, n: int) -> np.ndarray:
    return popcount(packed).sum(axis=1).astype(np.int64)


def shuffled_disagreements(packed: np.ndarray, n: int, sigma: np.ndarray, moved: np.ndarray) -> int:
    """||A - Q^T A Q||_F^2 touching only rows/pairs moved by sigma.

    Splits the ordered-pair count into a row-XOR term over moved rows and
    two moved-x-moved correction blocks, so work is O(k n / 64 + k^2).
    """
    k = len(moved)
    if k == 0:
        return 0
    smv = sigma[moved]
    s1 = int(popcount(packed[moved] ^ packed[smv]).sum(dtype=np.uint64))
    s2 = 0
    s3 = 0
    step = max(1, _CHUNK_ELEMS // max(k, 1))
    for lo in range(0, k, step):
        rows = moved[lo : lo + step]
        srows = smv[lo : lo + step]
        b_mm = get_bits(packed, rows, moved)
        s2 += int((b_mm != get_bits(packed, srows, smv)).sum())
        s3 += int((b_mm != get_bits(packed, srows, moved)).sum())
    return 2 * s1 + s2 - 2 * s3


def relabel_bits(packed: np.ndarray, n: int, sigma: np.ndarray) -> np.ndarray:
    """R with R[i, j] = A[sigma(i), sigma(j)], bit-packed."""
    out = np.empty((n, n_words(n)), dtype=np.uint64)
    colw = (sigma >> 6).astype(np.intp)
    colb = (sigma & 63).astype(np.uint64)
    step = max(1, _CHUNK_ELEMS // n)
    for lo in range(0, n, step):
        src = packed[sigma[lo : lo + step]]
        bits = ((src[:, colw] >> colb) & np.uint64(1)).astype(np.uint8)
        out[lo : lo + step] = pack_rows(bits, n)
    return out


def _pair_u53(seed: int, keys: np.ndarray) -> np.ndarray:
    u = mix64(np.asarray(seed, dtype=np.uint64) + (keys + np.uint64(1)) * GOLDEN)
    return (u >> np.uint64(11)).astype(np.float64)


def _corrupt_blocked(packed, n, seed, thresholds):
    """Shared skeleton: flip bit (i,j) when u53(i,j) < thresholds(block) * 2^53."""
    out = np.empty_like(packed)
    cols = np.arange(n, dtype=np.int64)
    step = max(1, _CHUNK_ELEMS // max(n, 1))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        rows = np.arange(lo, hi, dtype=np.int64)[:, None]
        plo = np.minimum(rows, cols)
        phi = np.maximum(rows, cols)
        keys = (plo * n + phi).astype(np.uint64)
        u53 = _pair_u53(seed, keys)
        abits = unpack_rows(packed[lo:hi], n)
        flip = u53 < thresholds(lo, hi, abits)
        np.logical_and(flip, rows != cols, out=flip)
        out[lo:hi] = pack_rows(abits ^ flip.astype(np.uint8), n)
    return out


def corrupt_two_rate(packed: np.ndarray, n: int, p0: float, p1: float, seed: int) -> np.ndarray:
    """Flip non-edges with rate p0 and edges with rate p1 (no relabeling)."""
    t0 = p0 * TWO53
    t1 = p1 * TWO53
    return _corrupt_blocked(packed, n, seed, lambda lo, hi, abits: np.where(abits == 1, t1, t0))


def corrupt_matrix_rate(
    packed: np.ndarray, n: int, psi1: np.ndarray, psi2: np.ndarray, seed: int
) -> np.ndarray:
    """Per-pair flip rates from dense matrices: psi1 for non-edges, psi2 for edges."""

    def thresholds(lo, hi, abits):
        return np.where(abits == 1, psi2[lo:hi], psi1[lo:hi]) * TWO53

    return _corrupt_blocked(packed, n, seed, thresholds)


def triangle_and_triples(packed: np.ndarray, n: int) -> tuple[int, int]:
    """(3 * triangles, connected triples) for the transitivity ratio."""
    deg = degrees(packed, n).astype(np.int64)
    triples = int((deg * (deg - 1) // 2).sum())
    t3 = 0
    for i in range(n):
        row_bits = unpack_rows(packed[i : i + 1], n)[0]
        nbrs = np.nonzero(row_bits)[0]
        nbrs = nbrs[nbrs > i]
        if nbrs.size:
            t3 += int(popcount(packed[nbrs] & packed[i]).sum(dtype=np.uint64))
    return t3, triples
