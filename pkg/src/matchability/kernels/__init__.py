"""Kernel backend selection.

``MATCHABILITY_BACKEND`` chooses the implementation:

* ``auto`` (default) — numba if it imports, else pure numpy
* ``numba`` — require the @njit kernels
* ``numpy`` — force the pure-numpy fallback

Both backends are importable side by side (the tests and the benchmark in
``benchmarks/bench_kernels.py`` compare them directly); this module just
binds the package-wide default.
"""

from __future__ import annotations

import os

import numpy as np

_choice = os.environ.get("MATCHABILITY_BACKEND", "auto").lower()
if _choice not in {"auto", "numba", "numpy"}:
    raise RuntimeError(f"MATCHABILITY_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice in {"auto", "numba"}:
    try:
        from . import _numba as _impl
    except ImportError:
        if _choice == "numba":
            raise
        from . import _numpy as _impl
else:
    from . import _numpy as _impl

BACKEND = _impl.BACKEND_NAME


def active_backend() -> str:
    return BACKEND


def _perm64(sigma: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(sigma, dtype=np.int64)


def disagreement_count(a: np.ndarray, b: np.ndarray) -> int:
    return int(_impl.disagreement_count(a, b))


def common_edge_trace(a: np.ndarray, b: np.ndarray) -> int:
    return int(_impl.common_edge_trace(a, b))


def degrees(packed: np.ndarray, n: int) -> np.ndarray:
    return _impl.degrees(packed, n)


def shuffled_disagreements(packed: np.ndarray, n: int, sigma: np.ndarray, moved: np.ndarray) -> int:
    return int(_impl.shuffled_disagreements(packed, n, _perm64(sigma), _perm64(moved)))


def relabel_bits(packed: np.ndarray, n: int, sigma: np.ndarray) -> np.ndarray:
    return _impl.relabel_bits(packed, n, _perm64(sigma))


def corrupt_two_rate(packed: np.ndarray, n: int, p0: float, p1: float, seed: int) -> np.ndarray:
    return _impl.corrupt_two_rate(packed, n, float(p0), float(p1), np.uint64(seed))


def corrupt_matrix_rate(
    packed: np.ndarray, n: int, psi1: np.ndarray, psi2: np.ndarray, seed: int
) -> np.ndarray:
    psi1 = np.ascontiguousarray(psi1, dtype=np.float64)
    psi2 = np.ascontiguousarray(psi2, dtype=np.float64)
    return _impl.corrupt_matrix_rate(packed, n, psi1, psi2, np.uint64(seed))


def triangle_and_triples(packed: np.ndarray, n: int) -> tuple[int, int]:
    t3, triples = _impl.triangle_and_triples(packed, n)
    return int(t3), int(triples)
