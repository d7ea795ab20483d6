"""Cross-entropy rates between finite-alphabet time-invariant Markov sources.

For transition matrices ``P`` (first source) and ``Q`` (second source, all
entries positive) the rates are

* Shannon:  ``-pi_P^T (P * ln Q) 1``
* Rényi:    ``ln lambda(P * Q^(a-1)) / (1-a)``
* Natural:  ``[ln lambda(P^a * Q^(1-a)) - ln lambda(P^a)] / (a-1)``

where ``*`` and the powers are elementwise (Hadamard) and ``lambda(R)`` is
the largest Perron root over the communicating classes of the nonnegative
matrix ``R``.  The elementwise reading is forced by the i.i.d. case: when
every row of ``P`` equals ``p`` and every row of ``Q`` equals ``q``,
``P * Q^(a-1)`` has rank one with Perron root ``sum_i p_i q_i^(a-1)`` and
the rate collapses to the single-letter Rényi cross-entropy.

:func:`brute_force_rate` is an independent oracle that enumerates every
sequence of length ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .closed_form import AlphaLike, AlphaOrder
from .errors import (
    BudgetExceeded,
    InitialNotPositive,
    InvalidParameters,
    NonConvergent,
    NonUniqueStationary,
    QNotPositive,
    ZeroMatrix,
)

__all__ = [
    "MarkovSource",
    "CommunicatingClass",
    "LambdaResult",
    "MarkovRate",
    "strongly_connected_components",
    "stationary_distribution",
    "perron_root",
    "lambda_measure",
    "shannon_rate",
    "renyi_rate",
    "natural_renyi_rate",
    "rate",
    "brute_force_rate",
    "BRUTE_FORCE_BUDGET",
]

STOCHASTIC_TOL = 1e-12
PERRON_TOL = 1e-13
PERRON_MAX_ITER = 100_000
BRUTE_FORCE_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class MarkovSource:
    """Row-stochastic transition matrix plus initial distribution.

    Parameters
    ----------
    transition : array_like, shape (m, m)
        Rows must be nonnegative and sum to one within 1e-12.
    initial : array_like, shape (m,), optional
        Initial distribution; the uniform vector when omitted.
    """

    transition: np.ndarray
    initial: Optional[np.ndarray] = None

    def __post_init__(self):
        P = np.array(self.transition, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] == 0:
            raise InvalidParameters(f"transition matrix must be square, got shape {P.shape}")
        if not np.all(np.isfinite(P)) or np.any(P < 0):
            raise InvalidParameters("transition matrix entries must be finite and nonnegative")
        rows = P.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > STOCHASTIC_TOL:
            raise InvalidParameters(f"transition rows must sum to 1 (worst row sum {float(rows[np.argmax(np.abs(rows - 1))])!r})")
        m = P.shape[0]
        p = np.full(m, 1.0 / m) if self.initial is None else np.array(self.initial, dtype=float)
        if p.shape != (m,) or not np.all(np.isfinite(p)) or np.any(p < 0):
            raise InvalidParameters("initial distribution must be a nonnegative vector of matching length")
        if abs(p.sum() - 1.0) > STOCHASTIC_TOL:
            raise InvalidParameters(f"initial distribution must sum to 1, got {float(p.sum())!r}")
        P.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "transition", P)
        object.__setattr__(self, "initial", p)

    @property
    def size(self) -> int:
        return self.transition.shape[0]


# ---------------------------------------------------------------------------
# graph structure


def strongly_connected_components(adj: np.ndarray) -> list[list[int]]:
    """Strongly connected components of the graph ``i -> j iff adj[i, j]``.

    Iterative Tarjan, so deep graphs do not hit the recursion limit.
    Components are returned in reverse topological order of the
    condensation (sinks first), each sorted ascending.
    """
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    succ = [np.flatnonzero(adj[i]).tolist() for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def _closed_classes(adj: np.ndarray, comps: list[list[int]]) -> list[bool]:
    out = []
    for c in comps:
        mask = np.ones(adj.shape[0], dtype=bool)
        mask[c] = False
        out.append(not np.any(adj[np.ix_(c, np.flatnonzero(mask))]))
    return out


def stationary_distribution(P) -> np.ndarray:
    """Stationary row vector of a stochastic matrix with a single closed class.

    Uses the Grassmann-Taksar-Heyman elimination on the closed class, which
    involves no subtractions and stays accurate for nearly decomposable
    chains.  Transient states get probability zero.

    Raises
    ------
    NonUniqueStationary
        If the chain has more than one closed communicating class.
    """
    P = P.transition if isinstance(P, MarkovSource) else np.asarray(P, dtype=float)
    adj = P > 0
    comps = strongly_connected_components(adj)
    closed = [c for c, is_closed in zip(comps, _closed_classes(adj, comps)) if is_closed]
    if len(closed) != 1:
        raise NonUniqueStationary(f"chain has {len(closed)} closed classes; the stationary law is not unique")
    states = closed[0]
    A = P[np.ix_(states, states)].copy()
    k = len(states)
    for n in range(k - 1, 0, -1):
        s = A[n, :n].sum()
        A[:n, n] /= s
        A[:n, :n] += np.outer(A[:n, n], A[n, :n])
    pi_c = np.zeros(k)
    pi_c[0] = 1.0
    for j in range(1, k):
        pi_c[j] = pi_c[:j] @ A[:j, j]
    pi = np.zeros(P.shape[0])
    pi[states] = pi_c / pi_c.sum()
    return pi


# ---------------------------------------------------------------------------
# Perron roots and lambda(R)


def perron_root(R, tol: float = PERRON_TOL, max_iter: int = PERRON_MAX_ITER) -> tuple[float, np.ndarray]:
    """Perron root and positive eigenvector of an irreducible nonnegative matrix.

    Power iteration runs on the shifted matrix ``R + I``, which has the same
    eigenvectors, is primitive whenever ``R`` is irreducible, and so avoids
    the oscillation that periodic matrices cause in plain power iteration.
    Iteration stops when the Collatz-Wielandt bounds ``min (Mx)_i / x_i``
    and ``max (Mx)_i / x_i``, which bracket the root, agree to ``tol``
    (relative).

    Returns
    -------
    root : float
    vector : ndarray
        Eigenvector normalised to unit infinity norm.
    """
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    if n == 1:
        return float(R[0, 0]), np.ones(1)
    M = R + np.eye(n)
    x = np.ones(n)
    lo = hi = math.nan
    for _ in range(max_iter):
        y = M @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        x = y / np.max(y)
        if hi - lo <= tol * hi:
            break
    else:
        raise NonConvergent(f"power iteration did not converge (bounds {float(lo)!r}, {float(hi)!r})")
    root = 0.5 * (lo + hi) - 1.0
    return max(root, 0.0), x


@dataclass(frozen=True)
class CommunicatingClass:
    states: tuple[int, ...]
    perron_root: float
    self_communicating: bool
    closed: bool
    reachable_from_inessential: bool

    def to_dict(self) -> dict:
        return {
            "states": list(self.states),
            "perron_root": self.perron_root,
            "self_communicating": self.self_communicating,
            "closed": self.closed,
            "reachable_from_inessential": self.reachable_from_inessential,
        }


@dataclass(frozen=True)
class LambdaResult:
    value: float
    classification: str
    class_structure: tuple[CommunicatingClass, ...]
    lambda_star: float
    lambda_sub: float
    eigenvector: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "classification": self.classification,
            "lambda_star": self.lambda_star,
            "lambda_sub": self.lambda_sub,
            "classes": [c.to_dict() for c in self.class_structure],
        }


def lambda_measure(R) -> LambdaResult:
    """Largest Perron root over the communicating classes of ``R``.

    For irreducible ``R`` this is its Perron root.  Otherwise the classes
    of the canonical form are split into closed (essential) ones and
    inessential ones; ``lambda_star`` is the largest root among closed
    self-communicating classes and ``lambda_sub`` the largest root among
    classes that are inessential or reachable from an inessential class.
    A singleton class without a self-loop has root 0.

    Raises
    ------
    ZeroMatrix
        If ``R`` has no positive entry.
    """
    R = np.asarray(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise InvalidParameters(f"lambda(R) needs a square matrix, got shape {R.shape}")
    if np.any(R < 0) or not np.all(np.isfinite(R)):
        raise InvalidParameters("lambda(R) needs a finite nonnegative matrix")
    if not np.any(R > 0):
        raise ZeroMatrix("lambda(R) is undefined for the zero matrix")
    adj = R > 0
    comps = strongly_connected_components(adj)
    closed = _closed_classes(adj, comps)
    n = R.shape[0]
    # reachability over the condensation: which states can be reached from an inessential class
    reach = np.zeros(n, dtype=bool)
    frontier = [s for c, is_closed in zip(comps, closed) if not is_closed for s in c]
    seen = np.zeros(n, dtype=bool)
    seen[frontier] = True
    while frontier:
        nxt = np.flatnonzero(adj[frontier].any(axis=0) & ~seen)
        seen[nxt] = True
        reach[nxt] = True
        frontier = nxt.tolist()

    classes = []
    vectors = {}
    for c, is_closed in zip(comps, closed):
        sub = R[np.ix_(c, c)]
        self_comm = len(c) > 1 or sub[0, 0] > 0
        if self_comm:
            root, vec = perron_root(sub)
            vectors[tuple(c)] = vec
        else:
            root = 0.0
        classes.append(CommunicatingClass(tuple(c), root, self_comm, is_closed,
                                          bool(reach[c].any())))
    lam_star = max((c.perron_root for c in classes if c.closed and c.self_communicating), default=0.0)
    lam_sub = max((c.perron_root for c in classes if not c.closed or c.reachable_from_inessential),
                  default=0.0)
    irreducible = len(comps) == 1
    eigvec = vectors.get(tuple(range(n))) if irreducible else None
    classes.sort(key=lambda c: c.states)
    return LambdaResult(max(lam_star, lam_sub), "irreducible" if irreducible else "reducible",
                        tuple(classes), lam_star, lam_sub, eigvec)


# ---------------------------------------------------------------------------
# rates


@dataclass(frozen=True)
class MarkovRate:
    value: float
    measure: str
    alpha: AlphaOrder
    diagnostics: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value

    def to_dict(self) -> dict:
        return {"value": self.value, "measure": self.measure, "alpha": str(self.alpha),
                "diagnostics": self.diagnostics}


def _check_pair(src1: MarkovSource, src2: MarkovSource, initials: bool) -> tuple[np.ndarray, np.ndarray]:
    if src1.size != src2.size:
        raise InvalidParameters(f"alphabet sizes differ: {src1.size} vs {src2.size}")
    Q = src2.transition
    if not np.all(Q > 0):
        i, j = np.argwhere(~(Q > 0))[0]
        raise QNotPositive(f"Q must have positive entries; Q[{i},{j}] = {float(Q[i, j])!r}")
    if initials:
        for name, v in (("p", src1.initial), ("q", src2.initial)):
            if not np.all(v > 0):
                raise InitialNotPositive(f"initial vector {name} must be positive")
    return src1.transition, Q


def _hadamard_power(M: np.ndarray, e: float) -> np.ndarray:
    """Elementwise power with the convention 0^e = 0 for e > 0."""
    out = np.zeros_like(M)
    pos = M > 0
    out[pos] = M[pos] ** e
    return out


def shannon_rate(src1: MarkovSource, src2: MarkovSource) -> MarkovRate:
    """``-sum_ij pi(i) P(i,j) ln Q(i,j)``; zero entries of ``P`` contribute nothing."""
    P, Q = _check_pair(src1, src2, initials=False)
    pi = stationary_distribution(P)
    terms = np.where(P > 0, P * np.log(Q), 0.0)
    value = -float(pi @ terms.sum(axis=1))
    return MarkovRate(value, "shannon", AlphaOrder(None), {"stationary": pi.tolist()})


def renyi_rate(src1: MarkovSource, src2: MarkovSource, a: AlphaLike) -> MarkovRate:
    """``ln lambda(P * Q^(a-1)) / (1-a)`` with elementwise operations."""
    alpha = AlphaOrder.parse(a)
    if alpha.is_shannon:
        return shannon_rate(src1, src2)
    P, Q = _check_pair(src1, src2, initials=True)
    av = alpha.value
    lam = lambda_measure(P * Q ** (av - 1.0))
    return MarkovRate(math.log(lam.value) / (1.0 - av), "renyi", alpha,
                      {"lambda": lam.value, "classification": lam.classification})


def natural_renyi_rate(src1: MarkovSource, src2: MarkovSource, a: AlphaLike) -> MarkovRate:
    """``[ln lambda(P^a * Q^(1-a)) - ln lambda(P^a)] / (a-1)`` with elementwise powers.

    Reducible ``P`` is accepted; ``diagnostics["p_classification"]`` records it.
    """
    alpha = AlphaOrder.parse(a)
    if alpha.is_shannon:
        return shannon_rate(src1, src2)
    P, Q = _check_pair(src1, src2, initials=True)
    av = alpha.value
    Pa = _hadamard_power(P, av)
    num = lambda_measure(Pa * Q ** (1.0 - av))
    den = lambda_measure(Pa)
    value = (math.log(num.value) - math.log(den.value)) / (av - 1.0)
    return MarkovRate(value, "natural", alpha, {
        "lambda_mixed": num.value,
        "lambda_p": den.value,
        "p_classification": den.classification,
    })


def rate(measure: str, src1: MarkovSource, src2: MarkovSource, a: AlphaLike = None) -> MarkovRate:
    if measure == "shannon" or a is None:
        return shannon_rate(src1, src2)
    if measure == "renyi":
        return renyi_rate(src1, src2, a)
    if measure == "natural":
        return natural_renyi_rate(src1, src2, a)
    raise ValueError(f"unknown measure {measure!r}")


# ---------------------------------------------------------------------------
# brute-force oracle


def _sequence_logprobs(src: MarkovSource, n: int) -> np.ndarray:
    """Log-probabilities of all m^n sequences, lexicographic order."""
    with np.errstate(divide="ignore"):
        logp = np.log(src.initial)
        logP = np.log(src.transition)
    m = src.size
    cur = logp
    for _ in range(n - 1):
        # cur has one entry per prefix; its last symbol is index % m
        last = np.arange(cur.size) % m
        cur = (cur[:, None] + logP[last]).ravel()
    return cur


def brute_force_rate(src1: MarkovSource, src2: MarkovSource, a: AlphaLike, n: int,
                     measure: str = "renyi") -> float:
    """Cross-entropy of length-``n`` blocks divided by ``n``, by full enumeration.

    Parameters
    ----------
    measure : {"renyi", "natural", "shannon"}
        ``renyi`` uses ``ln sum p q^(a-1) / (1-a)``; ``natural`` uses
        ``ln[sum p^a q^(1-a) / sum p^a] / (a-1)``.

    Raises
    ------
    BudgetExceeded
        If ``m**n`` exceeds :data:`BRUTE_FORCE_BUDGET`.
    """
    if n < 1:
        raise ValueError("sequence length must be >= 1")
    m = src1.size
    if m**n > BRUTE_FORCE_BUDGET:
        raise BudgetExceeded(f"{m}^{n} sequences exceed the enumeration budget {BRUTE_FORCE_BUDGET}")
    _check_pair(src1, src2, initials=True)
    alpha = AlphaOrder.parse(a) if a is not None else AlphaOrder(None)
    lp = _sequence_logprobs(src1, n)
    lq = _sequence_logprobs(src2, n)
    if measure == "shannon" or alpha.is_shannon:
        p = np.exp(lp)
        return -float(np.sum(np.where(p > 0, p * lq, 0.0))) / n
    av = alpha.value
    if measure == "renyi":
        return float(logsumexp(lp + (av - 1.0) * lq)) / ((1.0 - av) * n)
    if measure == "natural":
        return float(logsumexp(av * lp + (1.0 - av) * lq) - logsumexp(av * lp)) / ((av - 1.0) * n)
    raise ValueError(f"unknown measure {measure!r}")
