"""Compiled inner loops for the exponential-time exact routines.

All functions take adjacency as an int64 bitmask array (bit ``w`` of
``adj[v]`` set iff ``v ~ w``) except the BFS diameter, which takes CSR arrays.
Subset tables are indexed by vertex bitmask.
"""

import numba
import numpy as np

_JIT = dict(cache=True)


@numba.njit(**_JIT)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@numba.njit(**_JIT)
def lowest_bit_index(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@numba.njit(**_JIT)
def _closure(adj, mask, start):
    """Vertices of ``mask`` reachable from bitmask ``start`` inside ``mask``."""
    reach = start
    frontier = start
    while frontier:
        new = 0
        f = frontier
        while f:
            v = lowest_bit_index(f)
            f &= f - 1
            new |= adj[v]
        new &= mask & ~reach
        reach |= new
        frontier = new
    return reach


@numba.njit(**_JIT)
def treedepth_table(adj):
    """Tree-depth of every induced subgraph.

    ``choice[mask]`` is the lowest-labelled optimal root when ``mask`` is
    connected, and -1 when it is disconnected (td is then the max over its
    component split off the lowest vertex and the rest).
    """
    n = adj.shape[0]
    size = 1 << n
    td = np.zeros(size, dtype=np.int8)
    choice = np.full(size, -1, dtype=np.int8)
    for mask in range(1, size):
        low = mask & -mask
        comp = _closure(adj, mask, low)
        if comp != mask:
            a = td[comp]
            b = td[mask ^ comp]
            td[mask] = a if a > b else b
            continue
        best = 127
        arg = -1
        rest = mask
        while rest:
            v = lowest_bit_index(rest)
            rest &= rest - 1
            t = td[mask ^ (1 << v)]
            if t < best:
                best = t
                arg = v
        td[mask] = best + 1
        choice[mask] = arg
    return td, choice


@numba.njit(**_JIT)
def treewidth_table(adj):
    """Subset DP over elimination orderings.

    ``tw[S]`` is the best achievable max back-degree when the vertices of S
    are eliminated first; ``last[S]`` the lowest-labelled vertex of S that can
    be eliminated last in an optimal ordering of S.
    """
    n = adj.shape[0]
    size = 1 << n
    full = size - 1
    tw = np.full(size, 127, dtype=np.int8)
    last = np.full(size, -1, dtype=np.int8)
    tw[0] = -1
    for s in range(1, size):
        best = 127
        arg = -1
        rest = s
        while rest:
            v = lowest_bit_index(rest)
            rest &= rest - 1
            prior = s ^ (1 << v)
            # vertices outside s reachable from v through the eliminated set
            inner = _closure(adj, prior, adj[v] & prior)
            border = adj[v]
            f = inner
            while f:
                u = lowest_bit_index(f)
                f &= f - 1
                border |= adj[u]
            q = popcount(border & ~s & full)
            val = tw[prior]
            if q > val:
                val = q
            if val < best:
                best = val
                arg = v
        tw[s] = best
        last[s] = arg
    return tw, last


@numba.njit(**_JIT)
def longest_path(adj):
    n = adj.shape[0]
    size = 1 << n
    ends = np.zeros(size, dtype=np.int64)
    for v in range(n):
        ends[1 << v] = 1 << v
    best = 1 if n > 0 else 0
    for mask in range(1, size):
        e = ends[mask]
        if e == 0:
            continue
        c = popcount(mask)
        if c > best:
            best = c
        while e:
            v = lowest_bit_index(e)
            e &= e - 1
            nxt = adj[v] & ~mask
            while nxt:
                w = lowest_bit_index(nxt)
                nxt &= nxt - 1
                ends[mask | (1 << w)] |= 1 << w
    return best


@numba.njit(**_JIT)
def cheeger_search(adj):
    """Minimise cut(X)/vol(X) over 0 < |X| <= n/2; ties keep the smallest mask."""
    n = adj.shape[0]
    full = (1 << n) - 1
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = popcount(adj[v])
    best_cut = -1
    best_vol = 1
    best_mask = 0
    half = n // 2
    for mask in range(1, full + 1):
        if popcount(mask) > half:
            continue
        cut = 0
        vol = 0
        rest = mask
        while rest:
            v = lowest_bit_index(rest)
            rest &= rest - 1
            vol += deg[v]
            cut += popcount(adj[v] & ~mask & full)
        if vol == 0:
            continue
        if best_cut < 0 or cut * best_vol < best_cut * vol:
            best_cut = cut
            best_vol = vol
            best_mask = mask
    return best_cut, best_vol, best_mask


@numba.njit(**_JIT)
def vertex_expansion_search(adj):
    """Minimise |N(X) minus X| / |X| over 0 < |X| <= n/2."""
    n = adj.shape[0]
    full = (1 << n) - 1
    best_num = -1
    best_den = 1
    best_mask = 0
    half = n // 2
    for mask in range(1, full + 1):
        size = popcount(mask)
        if size > half:
            continue
        nb = 0
        rest = mask
        while rest:
            v = lowest_bit_index(rest)
            rest &= rest - 1
            nb |= adj[v]
        num = popcount(nb & ~mask & full)
        if best_num < 0 or num * best_den < best_num * size:
            best_num = num
            best_den = size
            best_mask = mask
    return best_num, best_den, best_mask


@numba.njit(**_JIT)
def all_sources_diameter(indptr, indices):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    best = 0
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > best:
                best = du
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
    return best
