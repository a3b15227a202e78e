"""Graph matching: Frank-Wolfe FAQ solver, exhaustive oracle, and accuracy.

Conventions: a matching is a :class:`Permutation` sigma aligning vertex i
of A with vertex sigma(i) of B, and its objective is the integer
disagreement count ||A - relabel(B, sigma)||_F^2.  The relaxation
variable D lives on the doubly stochastic polytope with D[i, sigma(i)] = 1
at permutation vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations as iter_permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._rng import child_rng
from .errors import InputError, ResourceError
from .graphs import Graph, Permutation, complement, disagreements, relabel


class DoublyStochastic:
    """Dense nonnegative matrix with unit row/column sums (tol 1e-9)."""

    __slots__ = ("n", "matrix")

    def __init__(self, matrix: np.ndarray):
        matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InputError("doubly stochastic matrix must be square")
        if matrix.min() < 0:
            raise InputError("doubly stochastic matrix must be nonnegative")
        if (
            np.abs(matrix.sum(axis=0) - 1.0).max() > 1e-9
            or np.abs(matrix.sum(axis=1) - 1.0).max() > 1e-9
        ):
            raise InputError("row/column sums must equal 1 within 1e-9")
        self.n = matrix.shape[0]
        self.matrix = matrix


def random_doubly_stochastic(n: int, rng: np.random.Generator) -> DoublyStochastic:
    """Sinkhorn-normalized positive random matrix."""
    m = rng.uniform(0.5, 1.5, size=(n, n))
    for _ in range(10_000):
        m /= m.sum(axis=1, keepdims=True)
        m /= m.sum(axis=0, keepdims=True)
        if (
            np.abs(m.sum(axis=1) - 1.0).max() < 1e-10
            and np.abs(m.sum(axis=0) - 1.0).max() < 1e-10
        ):
            break
    return DoublyStochastic(m)


@dataclass(frozen=True)
class FaqOptions:
    """Solver knobs; defaults follow common FAQ practice."""

    init: str | Permutation | DoublyStochastic = "barycenter"
    max_iters: int = 30
    tol: float = 1e-6
    restarts: int = 0
    complement_mode: str = "never"
    p_estimate: float | None = None
    track: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise InputError("max_iters must be >= 1")
        if self.tol <= 0:
            raise InputError("tol must be positive")
        if self.restarts < 0:
            raise InputError("restarts must be >= 0")
        if self.complement_mode not in {"never", "auto", "always"}:
            raise InputError("complement_mode must be never|auto|always")
        if isinstance(self.init, str) and self.init not in {"identity", "barycenter", "random"}:
            raise InputError("init must be identity|barycenter|random or an explicit start")


@dataclass
class MatchResult:
    P_hat: Permutation
    objective: int
    iterations: int
    converged: bool
    restarts_used: int
    complemented: bool = False
    trace: list = field(default_factory=list)


def lap_solve(cost: np.ndarray, sense: str = "min") -> Permutation:
    """Exact linear assignment; returns sigma with sigma(i) = column of row i."""
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise InputError("cost matrix must be square")
    if not np.isfinite(cost).all():
        raise InputError("cost matrix entries must be finite")
    if sense not in {"min", "max"}:
        raise InputError("sense must be 'min' or 'max'")
    _, cols = linear_sum_assignment(cost, maximize=(sense == "max"))
    return Permutation(cols.astype(np.int64))


def _initial_d(init, n: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(init, DoublyStochastic):
        if init.n != n:
            raise InputError("initial matrix size mismatch")
        return init.matrix.copy()
    if isinstance(init, Permutation):
        if init.n != n:
            raise InputError("initial permutation size mismatch")
        d = np.zeros((n, n))
        d[np.arange(n), init.sigma] = 1.0
        return d
    if init == "identity":
        return np.eye(n)
    if init == "barycenter":
        return np.full((n, n), 1.0 / n)
    return random_doubly_stochastic(n, rng).matrix


def _frank_wolfe(a: np.ndarray, b: np.ndarray, d: np.ndarray, max_iters: int, tol: float, trace):
    """Maximize tr(A D B D^T) by Frank-Wolfe with exact segment line search."""
    n = d.shape[0]
    rows = np.arange(n)
    obj = float(((a @ d @ b) * d).sum())
    iters = 0
    converged = False
    for _ in range(max_iters):
        iters += 1
        grad = 2.0 * (a @ d @ b)
        _, cols = linear_sum_assignment(grad, maximize=True)
        r = -d
        r[rows, cols] += 1.0
        lin = float((grad * r).sum())
        arb = a @ r @ b
        quad = float((arb * r).sum())
        # segment objective g(theta) = quad theta^2 + lin theta on [0, 1]
        candidates = [(0.0, 0.0), (quad + lin, 1.0)]
        if quad < 0.0:
            theta_c = -lin / (2.0 * quad)
            if 0.0 < theta_c < 1.0:
                candidates.append((quad * theta_c**2 + lin * theta_c, theta_c))
        gain, theta = max(candidates, key=lambda c: (c[0], -c[1]))
        if trace is not None:
            deriv = 2.0 * quad * theta + lin
            trace.append({"objective": obj, "theta": theta, "gain": gain, "deriv": deriv})
        if theta == 0.0:
            converged = True
            break
        d = d + theta * r
        new_obj = obj + gain
        rel = abs(new_obj - obj) / max(1.0, abs(obj))
        obj = new_obj
        if rel <= tol:
            converged = True
            break
    return d, obj, iters, converged


def faq_match(a: Graph, b: Graph, opts: FaqOptions | None = None, seed: int = 0) -> MatchResult:
    """Approximate GMP solution by Frank-Wolfe over the Birkhoff polytope.

    Runs once from ``opts.init`` plus ``opts.restarts`` extra runs from
    random doubly stochastic starts, keeping the best exact objective.
    ``complement_mode`` switches the target to the complement of B:
    "always" does, "auto" does only when ``opts.p_estimate`` > 1/2.
    """
    opts = opts or FaqOptions()
    if a.n != b.n:
        raise InputError("graphs must have equal order")
    if a.n < 2:
        raise InputError("matching needs at least 2 vertices")
    complemented = opts.complement_mode == "always" or (
        opts.complement_mode == "auto"
        and opts.p_estimate is not None
        and opts.p_estimate > 0.5
    )
    b_eff = complement(b) if complemented else b
    a_dense = a.to_dense().astype(np.float64)
    b_dense = b_eff.to_dense().astype(np.float64)

    best: MatchResult | None = None
    restarts_used = 0
    for run in range(opts.restarts + 1):
        rng = child_rng(seed, run)
        init = opts.init if run == 0 else "random"
        d0 = _initial_d(init, a.n, rng)
        trace: list | None = [] if opts.track else None
        d, _, iters, converged = _frank_wolfe(
            a_dense, b_dense, d0, opts.max_iters, opts.tol, trace
        )
        p_hat = lap_solve(d, sense="max")
        objective = disagreements(a, relabel(b_eff, p_hat))
        if run > 0:
            restarts_used += 1
        if best is None or objective < best.objective:
            best = MatchResult(
                P_hat=p_hat,
                objective=objective,
                iterations=iters,
                converged=converged,
                restarts_used=restarts_used,
                complemented=complemented,
                trace=trace or [],
            )
        if best.objective == 0:
            break
    best.restarts_used = restarts_used
    return best


def brute_force_mle(a: Graph, b: Graph, max_n: int = 9) -> tuple[list[Permutation], int]:
    """Exhaustive GMP: the full minimizer set and the minimum objective."""
    if a.n != b.n:
        raise InputError("graphs must have equal order")
    if a.n > max_n:
        raise ResourceError(f"brute force guarded at n <= {max_n}, got n = {a.n}")
    a_dense = a.to_dense()
    b_dense = b.to_dense()
    best_obj = None
    best_perms: list[Permutation] = []
    for sigma in iter_permutations(range(a.n)):
        idx = np.asarray(sigma, dtype=np.int64)
        obj = int((a_dense != b_dense[np.ix_(idx, idx)]).sum())
        if best_obj is None or obj < best_obj:
            best_obj = obj
            best_perms = [Permutation(idx)]
        elif obj == best_obj:
            best_perms.append(Permutation(idx))
    return best_perms, int(best_obj)


def match_accuracy(p_hat: Permutation, p_true: Permutation) -> float:
    """Fraction of vertices whose image agrees with the true permutation."""
    if p_hat.n != p_true.n:
        raise InputError("permutations must have equal size")
    return float((p_hat.sigma == p_true.sigma).mean())


def accuracy_by_degree(p_hat: Permutation, p_true: Permutation, graph: Graph, c: float) -> float:
    """Match accuracy restricted to the floor(c*n) highest-degree vertices of A.

    Degree ties break toward the smaller vertex index; an empty selection
    (floor(c*n) = 0) is vacuously perfect.
    """
    if not 0.0 < c <= 1.0:
        raise InputError(f"fraction c must lie in (0, 1], got {c}")
    if p_hat.n != graph.n or p_true.n != graph.n:
        raise InputError("size mismatch")
    top = math.floor(c * graph.n)
    if top == 0:
        return 1.0
    deg = graph.degrees()
    order = np.lexsort((np.arange(graph.n), -deg))
    chosen = order[:top]
    return float((p_hat.sigma[chosen] == p_true.sigma[chosen]).mean())
