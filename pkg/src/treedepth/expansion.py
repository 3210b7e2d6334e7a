"""Balanced separators, expansion constants and the tail bounds built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import _kernels
from .graph import Graph, GraphError, connected_components

__all__ = [
    "BalancedPartition",
    "CutWitness",
    "ExpansionReport",
    "SpectralReport",
    "DenseBoundParams",
    "ExpansionBoundParams",
    "partition_window",
    "is_balanced_kpartition",
    "find_balanced_kpartition",
    "cheeger_exact",
    "vertex_expansion_exact",
    "expansion_report",
    "lambda2_estimate",
    "tw_lower_from_expansion",
    "dense_threshold",
    "dense_separator_tail",
    "dense_bound",
    "cut_base",
    "sparse_cut_tail",
    "gamma0_search",
    "explicit_tw_fraction",
]

PARTITION_LIMIT = 15
ENUMERATION_LIMIT = 24


# -- balanced k-partitions ---------------------------------------------------

@dataclass(frozen=True)
class BalancedPartition:
    A: frozenset
    S: frozenset
    B: frozenset
    k: int


def partition_window(n: int, k: int) -> tuple[int, int]:
    """Integer range allowed for |A| and |B|: [(n-k-1)/3, 2(n-k-1)/3]."""
    rest = n - k - 1
    return -(-rest // 3), (2 * rest) // 3


def is_balanced_kpartition(g: Graph, part: BalancedPartition) -> bool:
    A, S, B = set(part.A), set(part.S), set(part.B)
    if A & S or A & B or S & B:
        raise ValueError("A, S, B must be pairwise disjoint")
    if A | S | B != set(range(g.n)):
        raise ValueError("A, S, B must cover the vertex set")
    if len(S) != part.k + 1:
        return False
    lo, hi = partition_window(g.n, part.k)
    if not (lo <= len(A) <= hi and lo <= len(B) <= hi):
        return False
    return not any(g.adj[a] & B for a in A)


def _pick_components(sizes: list[int], lo: int, hi: int) -> Optional[list[int]]:
    # subset sum over component sizes; returns indices whose sizes land in [lo, hi]
    reach = {0: None}
    for i, s in enumerate(sizes):
        for total in list(reach):
            if total + s not in reach:
                reach[total + s] = (total, i)
    for target in range(lo, hi + 1):
        if target in reach:
            picked = []
            t = target
            while reach[t] is not None:
                t, i = reach[t]
                picked.append(i)
            return picked
    return None


def find_balanced_kpartition(g: Graph, k: int,
                             limit: int = PARTITION_LIMIT) -> Optional[BalancedPartition]:
    """Exhaustive search for a balanced k-partition; ``None`` certifies absence.

    Every separator S of size k+1 is tried in lexicographic order; the
    components of g - S are then grouped into A and B by subset sum. This
    covers every 3-labelling, since A and B must each be unions of whole
    components. Absence with k <= n - 4 implies tw(g) > k.
    """
    if g.n > limit:
        raise GraphError(f"balanced partition search limited to {limit} vertices")
    if k < 0 or k + 1 > g.n:
        return None
    lo, hi = partition_window(g.n, k)
    if lo > hi:
        return None
    for sep in combinations(range(g.n), k + 1):
        S = frozenset(sep)
        rest, _ = g.subgraph(v for v in range(g.n) if v not in S)
        labels = [v for v in range(g.n) if v not in S]
        comps = [sorted(labels[i] for i in c.vertices) for c in connected_components(rest)]
        picked = _pick_components([len(c) for c in comps], lo, hi)
        if picked is None:
            continue
        A = frozenset(v for i in picked for v in comps[i])
        B = frozenset(labels) - A
        return BalancedPartition(A, S, B, k)
    return None


# -- exact expansion ---------------------------------------------------------

@dataclass(frozen=True)
class CutWitness:
    value: Fraction
    numerator: int
    denominator: int
    witness: frozenset


@dataclass(frozen=True)
class ExpansionReport:
    phi: CutWitness
    alpha: CutWitness


def _check_enumerable(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise GraphError(f"exhaustive enumeration limited to {limit} vertices (got {g.n})")
    if g.n < 2:
        raise GraphError("expansion needs at least two vertices")
    if len(connected_components(g)) != 1:
        raise GraphError("expansion constants are only reported for connected graphs")


def _mask_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def cheeger_exact(g: Graph, limit: int = ENUMERATION_LIMIT) -> CutWitness:
    """min over 0 < |X| <= n/2 of e(X, V-X) / e(X, V), with a minimising X."""
    _check_enumerable(g, limit)
    cut, vol, mask = _kernels.cheeger_search(g.adjacency_masks())
    return CutWitness(Fraction(int(cut), int(vol)), int(cut), int(vol), _mask_set(int(mask)))


def vertex_expansion_exact(g: Graph, limit: int = ENUMERATION_LIMIT) -> CutWitness:
    """min over 0 < |X| <= n/2 of |N(X) - X| / |X|, with a minimising X."""
    _check_enumerable(g, limit)
    num, den, mask = _kernels.vertex_expansion_search(g.adjacency_masks())
    return CutWitness(Fraction(int(num), int(den)), int(num), int(den), _mask_set(int(mask)))


def expansion_report(g: Graph, limit: int = ENUMERATION_LIMIT) -> ExpansionReport:
    return ExpansionReport(cheeger_exact(g, limit), vertex_expansion_exact(g, limit))


def cut_ratio(g: Graph, X) -> Fraction:
    """e(X, V-X) / e(X, V) for an explicit set, used to re-check witnesses."""
    X = set(X)
    cut = sum(len(g.adj[x] - X) for x in X)
    vol = sum(len(g.adj[x]) for x in X)
    return Fraction(cut, vol)


def boundary_ratio(g: Graph, X) -> Fraction:
    X = set(X)
    nb = set().union(*(g.adj[x] for x in X)) - X
    return Fraction(len(nb), len(X))


# -- spectral bound ----------------------------------------------------------

@dataclass(frozen=True)
class SpectralReport:
    lambda2: float
    degree: int
    conductance_bound: float  # (1 - lambda2/d) / 2
    iterations: int
    residual: float


def lambda2_estimate(g: Graph, tolerance: float = 1e-9, max_iter: int = 200000,
                     seed: int = 12345) -> SpectralReport:
    """Second-largest adjacency eigenvalue of a connected d-regular graph.

    Power iteration on A + dI (spectrum in [0, 2d]) restricted to the
    complement of the all-ones vector, stopped once the eigen-residual
    ||Mx - theta x|| drops below ``tolerance``.

    The reported conductance bound uses the normalised Laplacian gap
    1 - lambda2/d; the unnormalised gap d - lambda2 can exceed 2 and would
    not bound a ratio that is at most 1.
    """
    degs = set(g.degrees())
    if len(degs) != 1:
        raise GraphError("lambda2_estimate needs a regular graph")
    if g.n < 2 or len(connected_components(g)) != 1:
        raise GraphError("lambda2_estimate needs a connected graph")
    (d,) = degs
    A = np.zeros((g.n, g.n))
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1.0
    M = A + d * np.eye(g.n)
    x = np.random.default_rng(seed).standard_normal(g.n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    theta, residual = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = M @ x
        y -= y.mean()
        theta = float(x @ y)
        residual = float(np.linalg.norm(y - theta * x))
        if residual <= tolerance:
            break
        norm = np.linalg.norm(y)
        if norm == 0.0:
            # complement spectrum of M is {0}: only happens for K_2
            residual = 0.0
            break
        x = y / norm
    else:
        raise RuntimeError(f"power iteration did not converge in {max_iter} steps "
                           f"(residual {residual:.3g})")
    lam2 = theta - d
    return SpectralReport(lam2, d, (1.0 - lam2 / d) / 2.0, it, residual)


# -- bounds ------------------------------------------------------------------

def tw_lower_from_expansion(alpha, n: int) -> int:
    """ceil((alpha (n-1) - 3) / (alpha + 3)), clamped at 0.

    A valid tree-width lower bound whenever ``alpha`` is a vertex-expansion
    constant of the graph. Fractions are handled exactly.
    """
    if alpha < 0 or n < 1:
        raise ValueError("need alpha >= 0 and n >= 1")
    a = Fraction(alpha)
    return max(0, math.ceil((a * (n - 1) - 3) / (a + 3)))


@dataclass(frozen=True)
class DenseBoundParams:
    f: float
    c: float
    bound: float

    @property
    def vanishing(self) -> bool:
        return self.f > dense_threshold(self.c)


def dense_threshold(c: float) -> float:
    """Separator fraction above which the union bound decays: 3 sqrt(ln 3 / (2c))."""
    return 3.0 * math.sqrt(math.log(3.0) / (2.0 * c))


def dense_log_tail(n: int, p: float, f: float) -> float:
    return math.log(3.0) * n - 2.0 * f * f / 9.0 * p * n * n


def dense_separator_tail(n: int, p: float, f: float) -> float:
    """exp((ln 3) n - (2 f^2 / 9) p n^2): bound on the chance that a balanced
    k-partition with k <= (1 - f) n exists in G(n, p)."""
    if not 0.0 < p <= 1.0 or f <= 0.0:
        raise ValueError("need 0 < p <= 1 and f > 0")
    return math.exp(dense_log_tail(n, p, f))


def dense_bound(n: int, p: float, f: float) -> DenseBoundParams:
    return DenseBoundParams(f, p * n, dense_separator_tail(n, p, f))


@dataclass(frozen=True)
class ExpansionBoundParams:
    alpha: float
    delta: float
    gamma: float
    beta: float
    c: float
    base: float
    bound: float


def _gamma_max(c: float, alpha: float, delta: float) -> float:
    return alpha * delta / (3.0 * c + alpha)


def cut_base(gamma: float, c: float, alpha: float, delta: float) -> float:
    """(e/gamma)^gamma * (gamma e c / beta)^beta with beta = alpha (delta - gamma) / 3."""
    beta = alpha * (delta - gamma) / 3.0
    return math.exp(gamma * (1.0 - math.log(gamma))
                    + beta * (math.log(gamma * c / beta) + 1.0))


def sparse_cut_tail(n: int, c: float, alpha: float, delta: float,
                    gamma: float) -> ExpansionBoundParams:
    """gamma n^2 * base^n: union bound on a set of gamma n vertices carrying
    at least beta n incident edges in G(n, c/n)."""
    gmax = _gamma_max(c, alpha, delta)
    if not 0.0 < gamma < gmax:
        raise ValueError(f"gamma must lie in (0, {gmax:.6g})")
    beta = alpha * (delta - gamma) / 3.0
    base = cut_base(gamma, c, alpha, delta)
    log_bound = math.log(gamma) + 2.0 * math.log(n) + n * math.log(base)
    bound = math.exp(log_bound) if log_bound < 700 else math.inf
    return ExpansionBoundParams(alpha, delta, gamma, beta, c, base, bound)


def gamma0_search(c: float, alpha: float, delta: float, tol: float = 1e-9,
                  grid: int = 4096) -> float:
    """Largest gamma0 such that the base stays below 1 on (0, gamma0].

    The admissible interval is scanned on a grid for the first point where
    the base reaches 1; that crossing is then refined by bisection.
    """
    gmax = _gamma_max(c, alpha, delta)
    prev = 0.0
    for i in range(1, grid + 1):
        g = gmax * i / (grid + 1)
        if cut_base(g, c, alpha, delta) >= 1.0:
            lo, hi = prev, g
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if mid > 0 and cut_base(mid, c, alpha, delta) < 1.0:
                    lo = mid
                else:
                    hi = mid
            return lo
        prev = g
    return gmax


def explicit_tw_fraction(c: float, alpha: float, delta: float) -> float:
    """(alpha delta)^2 / (9 e^3 c^2): explicit linear tree-width fraction."""
    return (alpha * delta) ** 2 / (9.0 * math.e ** 3 * c * c)
