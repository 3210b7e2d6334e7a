"""Seeded samplers for G(n,p), G(n,m), random d-regular graphs and labeled trees.

Randomness comes from numpy's PCG64 bit generator. The 64-bit seed of each
trial is obtained by mixing ``(base, trial)`` with the SplitMix64 finaliser
(constants 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB), so a
trial's stream depends only on its own index.
"""

from __future__ import annotations

import heapq
import math
import zlib
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "RandomSeed",
    "splitmix64",
    "mix_seed",
    "sparse_p",
    "sample_gnp",
    "sample_gnm",
    "sample_regular",
    "sample_labeled_tree",
    "labeled_tree_with_code",
    "prufer_decode",
    "prufer_encode",
]

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_seed(*parts) -> int:
    """Fold integers (and strings, via CRC32) into one 64-bit seed."""
    h = 0
    for part in parts:
        if isinstance(part, str):
            part = zlib.crc32(part.encode())
        h = splitmix64(h ^ (int(part) & _MASK64))
    return h


@dataclass(frozen=True)
class RandomSeed:
    base: int
    trial: int = 0

    def __post_init__(self):
        if not 0 <= self.base <= _MASK64:
            raise ValueError("base seed must be a 64-bit unsigned integer")
        if self.trial < 0:
            raise ValueError("trial index must be non-negative")

    def state(self) -> int:
        return mix_seed(self.base, self.trial)

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.state()))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, RandomSeed):
        return seed.rng()
    if isinstance(seed, np.random.Generator):
        return seed
    return RandomSeed(int(seed)).rng()


def sparse_p(n: int, c: float) -> float:
    """Edge probability c/n; refuses c > n."""
    if c < 0 or c > n:
        raise ValueError(f"need 0 <= c <= n, got c={c}, n={n}")
    return c / n if n else 0.0


def _pair_from_index(idx: np.ndarray) -> np.ndarray:
    # Pairs (u, v), u < v, listed by v then u: idx = v(v-1)/2 + u.
    v = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) // 2).astype(np.int64)
    base = v * (v - 1) // 2
    v = np.where(base > idx, v - 1, v)
    base = v * (v - 1) // 2
    v = np.where(base + v <= idx, v + 1, v)
    base = v * (v - 1) // 2
    return np.stack([idx - base, v], axis=1)


def sample_gnp(n: int, p: float, seed) -> Graph:
    """Erdős–Rényi G(n, p).

    Pairs are visited in a fixed order and the gaps between chosen pairs are
    drawn from a geometric law, which is equivalent to independent coin flips
    but costs O(n + m).
    """
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph(n)
    if p == 1.0:
        return Graph(n, ((u, v) for v in range(n) for u in range(v)))
    rng = _rng(seed)
    chunk = max(16, int(total * p + 6 * math.sqrt(total * p) + 16))
    picked = []
    pos = -1
    while True:
        gaps = rng.geometric(p, size=chunk)
        idx = pos + np.cumsum(gaps)
        inside = idx[idx < total]
        picked.append(inside)
        if len(inside) < chunk:
            break
        pos = int(idx[-1])
    idx = np.concatenate(picked)
    return Graph(n, map(tuple, _pair_from_index(idx).tolist()))


def sample_gnm(n: int, m: int, seed) -> Graph:
    """Uniform graph with exactly ``m`` edges (m distinct pairs without replacement)."""
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"m must lie in [0, {total}], got {m}")
    rng = _rng(seed)
    if m > total // 2:
        idx = np.sort(rng.choice(total, size=m, replace=False))
    else:
        chosen = set()
        while len(chosen) < m:
            for x in rng.integers(0, total, size=m - len(chosen)).tolist():
                if len(chosen) < m:
                    chosen.add(x)
        idx = np.array(sorted(chosen), dtype=np.int64)
    return Graph(n, map(tuple, _pair_from_index(idx).tolist()))


def sample_regular(n: int, d: int, seed, max_tries: int = 100000) -> Graph:
    """Random simple d-regular graph from the configuration model.

    Half-edges are paired by a uniform shuffle; pairings with a loop or a
    repeated pair are discarded and redrawn.
    """
    if d < 0 or d >= n:
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        perm = rng.permutation(stubs).reshape(-1, 2)
        perm.sort(axis=1)
        if np.any(perm[:, 0] == perm[:, 1]):
            continue
        pairs = set(map(tuple, perm.tolist()))
        if len(pairs) == len(perm):
            return Graph(n, pairs)
    raise RuntimeError(f"no simple pairing after {max_tries} tries")


def prufer_decode(code, k: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``0..k-1`` with Prüfer sequence ``code``."""
    if k == 1:
        return []
    if len(code) != k - 2:
        raise ValueError("Prüfer code must have length k - 2")
    degree = [1] * k
    for x in code:
        degree[x] += 1
    leaves = [v for v in range(k) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def prufer_encode(tree: Graph) -> list[int]:
    """Inverse of :func:`prufer_decode`: repeatedly strip the smallest leaf."""
    k = tree.n
    if tree.m != k - 1:
        raise ValueError("not a tree")
    nbrs = [set(a) for a in tree.adj]
    leaves = [v for v in range(k) if len(nbrs[v]) == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(k - 2):
        leaf = heapq.heappop(leaves)
        (x,) = nbrs[leaf]
        code.append(x)
        nbrs[x].discard(leaf)
        nbrs[leaf].clear()
        if len(nbrs[x]) == 1:
            heapq.heappush(leaves, x)
    return code


def labeled_tree_with_code(k: int, seed) -> tuple[Graph, list[int]]:
    if k < 1:
        raise ValueError("tree order must be at least 1")
    if k <= 2:
        return Graph(k, [(0, 1)] if k == 2 else []), []
    code = _rng(seed).integers(0, k, size=k - 2).tolist()
    return Graph(k, prufer_decode(code, k)), code


def sample_labeled_tree(k: int, seed) -> Graph:
    """Uniform labeled tree on ``k`` vertices via a uniform Prüfer sequence."""
    return labeled_tree_with_code(k, seed)[0]
