"""Bit-packed adjacency rows.

A graph on ``n`` vertices is stored as an ``(n, W)`` C-contiguous uint64
array with ``W = ceil(n / 64)``; bit ``j`` of row ``i`` lives in word
``j >> 6`` at position ``j & 63``.  Bits at column indices >= n are kept
at zero so popcounts never overcount.
"""

from __future__ import annotations

import numpy as np


def n_words(n: int) -> int:
    return (n + 63) >> 6


def zeros(n: int) -> np.ndarray:
    return np.zeros((n, n_words(n)), dtype=np.uint64)


def pack_rows(bits: np.ndarray, n: int) -> np.ndarray:
    """Pack a (rows, n) 0/1 uint8 array into (rows, W) uint64 words."""
    rows = bits.shape[0]
    w = n_words(n)
    byte_rows = np.zeros((rows, w * 8), dtype=np.uint8)
    packed_bytes = np.packbits(bits.astype(np.uint8, copy=False), axis=1, bitorder="little")
    byte_rows[:, : packed_bytes.shape[1]] = packed_bytes
    return byte_rows.view(np.uint64)


def unpack_rows(packed: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_rows`; returns a (rows, n) uint8 array."""
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n]


def get_bits(packed: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Gather the (len(rows), len(cols)) bit submatrix as uint8."""
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    words = packed[rows][:, cols >> 6]
    shifts = (cols & 63).astype(np.uint64)
    return ((words >> shifts) & np.uint64(1)).astype(np.uint8)


def set_pair(packed: np.ndarray, i: int, j: int) -> None:
    """Set the symmetric pair of bits (i, j) and (j, i). Mutates in place."""
    packed[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    packed[j, i >> 6] |= np.uint64(1) << np.uint64(i & 63)


def popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words)


def popcount_total(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum(dtype=np.uint64))
