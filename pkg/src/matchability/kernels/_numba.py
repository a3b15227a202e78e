"""numba @njit kernel implementations (default backend).

Bit-identical to :mod:`matchability.kernels._numpy`; the test suite
asserts cross-backend equality. Callers pass ``seed`` as ``np.uint64``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U0 = np.uint64(0)
U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MXA = np.uint64(0xBF58476D1CE4E5B9)
_MXB = np.uint64(0x94D049BB133111EB)
_TWO53 = 9007199254740992.0

BACKEND_NAME = "numba"


@njit(cache=True, nogil=True, inline="always")
def _pc64(x):
    x = x - ((x >> U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True, nogil=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MXA
    z = (z ^ (z >> np.uint64(27))) * _MXB
    return z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True, inline="always")
def _u53(seed, key):
    u = _mix64(seed + (key + U1) * _GOLDEN)
    return np.float64(u >> np.uint64(11))


@njit(cache=True, nogil=True, inline="always")
def _bit(packed, i, j):
    return (packed[i, j >> 6] >> np.uint64(j & 63)) & U1


@njit(cache=True, nogil=True)
def disagreement_count(a, b):
    total = U0
    for i in range(a.shape[0]):
        for w in range(a.shape[1]):
            total += _pc64(a[i, w] ^ b[i, w])
    return int(total)


@njit(cache=True, nogil=True)
def common_edge_trace(a, b):
    total = U0
    for i in range(a.shape[0]):
        for w in range(a.shape[1]):
            total += _pc64(a[i, w] & b[i, w])
    return int(total)


@njit(cache=True, nogil=True)
def degrees(packed, n):
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        total = U0
        for w in range(packed.shape[1]):
            total += _pc64(packed[i, w])
        out[i] = np.int64(total)
    return out


@njit(cache=True, nogil=True)
def shuffled_disagreements(packed, n, sigma, moved):
    k = moved.shape[0]
    if k == 0:
        return 0
    s1 = U0
    for t in range(k):
        v = moved[t]
        sv = sigma[v]
        for w in range(packed.shape[1]):
            s1 += _pc64(packed[v, w] ^ packed[sv, w])
    s2 = 0
    s3 = 0
    for a in range(k):
        i = moved[a]
        si = sigma[i]
        for b in range(k):
            j = moved[b]
            aij = _bit(packed, i, j)
            if aij != _bit(packed, si, sigma[j]):
                s2 += 1
            if aij != _bit(packed, si, j):
                s3 += 1
    return 2 * int(s1) + s2 - 2 * s3


@njit(cache=True, nogil=True)
def relabel_bits(packed, n, sigma):
    w_count = (n + 63) >> 6
    out = np.zeros((n, w_count), dtype=np.uint64)
    inv = np.empty(n, dtype=np.int64)
    for i in range(n):
        inv[sigma[i]] = i
    for i in range(n):
        src = sigma[i]
        for w in range(w_count):
            word = packed[src, w]
            while word != U0:
                low = word & (U0 - word)
                t = np.int64(w * 64) + np.int64(_pc64(low - U1))
                j = inv[t]
                out[i, j >> 6] |= U1 << np.uint64(j & 63)
                word ^= low
    return out


@njit(cache=True, nogil=True)
def corrupt_two_rate(packed, n, p0, p1, seed):
    out = packed.copy()
    t0 = p0 * _TWO53
    t1 = p1 * _TWO53
    un = np.uint64(n)
    for i in range(n):
        base = np.uint64(i) * un
        for j in range(i + 1, n):
            u = _u53(seed, base + np.uint64(j))
            thr = t1 if _bit(packed, i, j) == U1 else t0
            if u < thr:
                out[i, j >> 6] ^= U1 << np.uint64(j & 63)
                out[j, i >> 6] ^= U1 << np.uint64(i & 63)
    return out


@njit(cache=True, nogil=True)
def corrupt_matrix_rate(packed, n, psi1, psi2, seed):
    out = packed.copy()
    un = np.uint64(n)
    for i in range(n):
        base = np.uint64(i) * un
        for j in range(i + 1, n):
            u = _u53(seed, base + np.uint64(j))
            if _bit(packed, i, j) == U1:
                thr = psi2[i, j] * _TWO53
            else:
                thr = psi1[i, j] * _TWO53
            if u < thr:
                out[i, j >> 6] ^= U1 << np.uint64(j & 63)
                out[j, i >> 6] ^= U1 << np.uint64(i & 63)
    return out


@njit(cache=True, nogil=True)
def triangle_and_triples(packed, n):
    triples = 0
    t3 = U0
    w_count = packed.shape[1]
    for i in range(n):
        d = U0
        for w in range(w_count):
            d += _pc64(packed[i, w])
        di = np.int64(d)
        triples += (di * (di - 1)) // 2
        for w in range(w_count):
            word = packed[i, w]
            while word != U0:
                low = word & (U0 - word)
                j = np.int64(w * 64) + np.int64(_pc64(low - U1))
                word ^= low
                if j > i:
                    for w2 in range(w_count):
                        t3 += _pc64(packed[i, w2] & packed[j, w2])
    return int(t3), triples
