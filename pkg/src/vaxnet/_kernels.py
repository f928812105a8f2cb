"""Numba kernels for the hot loops: neighbor intersections, BFS/Dijkstra
based centrality sweeps, and exhaustive vaccination-set enumeration.

All kernels operate on CSR arrays (indptr, indices, per-entry lengths) with
sorted neighbor lists.  Weighted shortest paths use lexicographic
(total length, hop count) order so that zero-length edges are well defined
and the all-weights-equal case coincides with the unweighted metric.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INF = np.inf
HUGE_HOPS = np.int64(2**62)


@njit(cache=True)
def edge_jaccard_numerators(indptr, indices, eu, ev):
    """|N(u) & N(v)| for each edge via sorted-list intersection."""
    m = eu.size
    out = np.empty(m, np.float64)
    for k in range(m):
        u, v = eu[k], ev[k]
        i, j = indptr[u], indptr[v]
        iu, jv = indptr[u + 1], indptr[v + 1]
        c = 0
        while i < iu and j < jv:
            a, b = indices[i], indices[j]
            if a == b:
                c += 1
                i += 1
                j += 1
            elif a < b:
                i += 1
            else:
                j += 1
        out[k] = c
    return out


# ---------------------------------------------------------------------------
# unweighted sweeps (BFS)
# ---------------------------------------------------------------------------


@njit(cache=True)
def brandes_unweighted(indptr, indices):
    """Betweenness over ordered pairs; caller halves for the unordered sum."""
    n = indptr.size - 1
    bc = np.zeros(n)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n)
    delta = np.empty(n)
    order = np.empty(n, np.int64)
    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            for ei in range(indptr[v], indptr[v + 1]):
                w = indices[ei]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for ei in range(indptr[w], indptr[w + 1]):
                v = indices[ei]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc


@njit(cache=True)
def bfs_distance_sums(indptr, indices):
    """Per node: (sum of hop distances to reachable nodes, component size)."""
    n = indptr.size - 1
    sums = np.zeros(n)
    reach = np.zeros(n, np.int64)
    dist = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        order[0] = s
        head, tail = 0, 1
        total = 0
        while head < tail:
            v = order[head]
            head += 1
            total += dist[v]
            for ei in range(indptr[v], indptr[v + 1]):
                w = indices[ei]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
        sums[s] = total
        reach[s] = tail
    return sums, reach


# ---------------------------------------------------------------------------
# weighted sweeps (lexicographic Dijkstra with a manual binary heap)
# ---------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _heap_push(hd, hh, hv, size, d, h, v):
    i = size
    hd[i] = d
    hh[i] = h
    hv[i] = v
    while i > 0:
        p = (i - 1) // 2
        if hd[p] > hd[i] or (hd[p] == hd[i] and hh[p] > hh[i]):
            hd[p], hd[i] = hd[i], hd[p]
            hh[p], hh[i] = hh[i], hh[p]
            hv[p], hv[i] = hv[i], hv[p]
            i = p
        else:
            break
    return size + 1


@njit(cache=True, inline="always")
def _heap_pop(hd, hh, hv, size):
    d, h, v = hd[0], hh[0], hv[0]
    size -= 1
    hd[0], hh[0], hv[0] = hd[size], hh[size], hv[size]
    i = 0
    while True:
        l = 2 * i + 1
        r = l + 1
        best = i
        if l < size and (
            hd[l] < hd[best] or (hd[l] == hd[best] and hh[l] < hh[best])
        ):
            best = l
        if r < size and (
            hd[r] < hd[best] or (hd[r] == hd[best] and hh[r] < hh[best])
        ):
            best = r
        if best == i:
            break
        hd[best], hd[i] = hd[i], hd[best]
        hh[best], hh[i] = hh[i], hh[best]
        hv[best], hv[i] = hv[i], hv[best]
        i = best
    return d, h, v, size


@njit(cache=True)
def _dijkstra(indptr, indices, lengths, s, dist, hops, sigma, order, hd, hh, hv):
    """Single-source lexicographic shortest paths; fills dist/hops/sigma and
    the finalization order.  Returns the number of reached nodes."""
    dist[:] = INF
    hops[:] = HUGE_HOPS
    sigma[:] = 0.0
    dist[s] = 0.0
    hops[s] = 0
    sigma[s] = 1.0
    size = _heap_push(hd, hh, hv, 0, 0.0, 0, s)
    count = 0
    while size > 0:
        d, h, v, size = _heap_pop(hd, hh, hv, size)
        if d > dist[v] or (d == dist[v] and h > hops[v]):
            continue
        order[count] = v
        count += 1
        for ei in range(indptr[v], indptr[v + 1]):
            w = indices[ei]
            nd = d + lengths[ei]
            nh = h + 1
            if nd < dist[w] or (nd == dist[w] and nh < hops[w]):
                dist[w] = nd
                hops[w] = nh
                sigma[w] = sigma[v]
                size = _heap_push(hd, hh, hv, size, nd, nh, w)
            elif nd == dist[w] and nh == hops[w]:
                sigma[w] += sigma[v]
    return count


@njit(cache=True)
def brandes_weighted(indptr, indices, lengths):
    """Weighted betweenness over ordered pairs (lexicographic shortest paths)."""
    n = indptr.size - 1
    nnz = indices.size
    bc = np.zeros(n)
    dist = np.empty(n)
    hops = np.empty(n, np.int64)
    sigma = np.empty(n)
    delta = np.empty(n)
    order = np.empty(n, np.int64)
    hd = np.empty(nnz + n + 1)
    hh = np.empty(nnz + n + 1, np.int64)
    hv = np.empty(nnz + n + 1, np.int64)
    for s in range(n):
        count = _dijkstra(
            indptr, indices, lengths, s, dist, hops, sigma, order, hd, hh, hv
        )
        delta[:] = 0.0
        for i in range(count - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for ei in range(indptr[w], indptr[w + 1]):
                v = indices[ei]
                if dist[v] + lengths[ei] == dist[w] and hops[v] + 1 == hops[w]:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc


@njit(cache=True)
def dijkstra_distance_sums(indptr, indices, lengths):
    """Per node: (sum of weighted distances, sum of hop counts, reach)."""
    n = indptr.size - 1
    nnz = indices.size
    sums_len = np.zeros(n)
    sums_hop = np.zeros(n)
    reach = np.zeros(n, np.int64)
    dist = np.empty(n)
    hops = np.empty(n, np.int64)
    sigma = np.empty(n)
    order = np.empty(n, np.int64)
    hd = np.empty(nnz + n + 1)
    hh = np.empty(nnz + n + 1, np.int64)
    hv = np.empty(nnz + n + 1, np.int64)
    for s in range(n):
        count = _dijkstra(
            indptr, indices, lengths, s, dist, hops, sigma, order, hd, hh, hv
        )
        tl = 0.0
        th = 0.0
        for i in range(count):
            v = order[i]
            tl += dist[v]
            th += hops[v]
        sums_len[s] = tl
        sums_hop[s] = th
        reach[s] = count
    return sums_len, sums_hop, reach


# ---------------------------------------------------------------------------
# exhaustive vaccination-set enumeration on converted instances
# ---------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def best_vaccination_mask(n_y, n_z, k, saved_z_by_ymask):
    """Maximize surviving Z nodes over every k-subset of Y u Z.

    Bits 0..n_y-1 select Y nodes, bits n_y..n_y+n_z-1 select Z nodes.
    ``saved_z_by_ymask[ymask]`` holds, in its low n_z bits, the Z nodes whose
    two Y neighbors are both inside that Y subset.  Iterates all
    C(n_y + n_z, k) masks (Gosper's hack) and returns
    (best mask, surviving Z count).
    """
    n_bits = n_y + n_z
    y_mask_all = (np.int64(1) << n_y) - 1
    z_shift = n_y
    if k == 0:
        return np.int64(0), np.int64(0)
    best_mask = np.int64(0)
    best_saved = np.int64(-1)
    s = (np.int64(1) << k) - 1
    limit = np.int64(1) << n_bits
    while s < limit:
        ymask = s & y_mask_all
        zbits = (s >> z_shift) | saved_z_by_ymask[ymask]
        saved = _popcount(zbits)
        if saved > best_saved:
            best_saved = saved
            best_mask = s
        # Gosper: next mask with the same popcount
        c = s & -s
        r = s + c
        s = (((r ^ s) >> 2) // c) | r
    return best_mask, best_saved
