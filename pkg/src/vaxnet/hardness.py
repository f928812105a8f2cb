"""Executable checks around the NP-hardness reduction.

The convertor maps a densest-subgraph instance H to a vaccination instance
G = X u Y u Z (one hub x, one y per node of H, one z per edge of H) with
unit edge weights, omega_i = 1, omega_r = 0 everywhere, omega_d = 1 on Z
and 0 elsewhere, and x initially infectious.  On such instances the
absorbed outcome is deterministic: unvaccinated X u Y nodes become and stay
infectious, a Z node survives iff it is vaccinated or both Y neighbors are,
and X u Y nodes never die.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse.csgraph import connected_components

from ._kernels import best_vaccination_mask
from .graph import Graph
from .model import DiseaseParams, EpidemicState, I, S, run_to_absorption

ENUMERATION_GUARD = 10_000_000


class EnumerationGuardError(ValueError):
    pass


@dataclass
class ConvertedInstance:
    graph: Graph
    x: int
    y_nodes: np.ndarray  # y_nodes[i] corresponds to node i of H
    z_nodes: np.ndarray  # z_nodes[j] corresponds to edge j of H
    params: DiseaseParams
    h_edges: np.ndarray  # edge j of H, endpoints in H's node ids


def is_connected(g: Graph) -> bool:
    if g.n == 1:
        return True
    ncomp, _ = connected_components(g.unweighted_csr, directed=False)
    return ncomp == 1


def convert(h: Graph, beta: float = 2.0, gamma: float = 0.6) -> ConvertedInstance:
    """Build the vaccination instance for a connected graph H."""
    if not is_connected(h):
        raise ValueError("H must be connected")
    n_h, m_h = h.n, h.m
    x = 0
    y = np.arange(1, 1 + n_h, dtype=np.int64)
    z = np.arange(1 + n_h, 1 + n_h + m_h, dtype=np.int64)

    edges = [(x, int(y[i])) for i in range(n_h)]
    for j, (a, b) in enumerate(h.edges):
        edges.append((int(y[a]), int(z[j])))
        edges.append((int(y[b]), int(z[j])))

    g = Graph(1 + n_h + m_h, np.array(edges, dtype=np.int64))
    omega_d = np.zeros(g.n)
    omega_d[z] = 1.0
    params = DiseaseParams(
        beta=beta,
        gamma=gamma,
        omega_i=np.ones(g.n),
        omega_r=np.zeros(g.n),
        omega_d=omega_d,
    )
    params.validate(g.n)
    return ConvertedInstance(
        graph=g, x=x, y_nodes=y, z_nodes=z, params=params, h_edges=h.edges.copy()
    )


def initial_state(inst: ConvertedInstance, vaccinated=()) -> EpidemicState:
    comp = np.full(inst.graph.n, S, dtype=np.int8)
    for v in vaccinated:
        comp[v] = 4  # Vaccinated
    comp[inst.x] = I
    return EpidemicState(compartments=comp, round=0)


def _check_guard(total: int) -> None:
    if total > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{total} subsets exceed the enumeration guard ({ENUMERATION_GUARD})"
        )


def densest_subgraph_bruteforce(h: Graph, k: int):
    """Exhaustive max over all k-subsets; returns (node set, edge count)."""
    if not 1 <= k <= h.n:
        raise ValueError("k must lie in [1, n]")
    _check_guard(math.comb(h.n, k))
    masks = [0] * h.n
    for u, v in h.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    best, best_set = -1, None
    for subset in combinations(range(h.n), k):
        smask = 0
        for v in subset:
            smask |= 1 << v
        cnt = sum((masks[v] & smask).bit_count() for v in subset) // 2
        if cnt > best:
            best, best_set = cnt, subset
    return frozenset(best_set), best


def girth(h: Graph) -> float:
    """Exact girth via per-node BFS; +inf for acyclic graphs."""
    best = math.inf
    dist = np.empty(h.n, dtype=np.int64)
    parent = np.empty(h.n, dtype=np.int64)
    for s in range(h.n):
        dist[:] = -1
        parent[:] = -1
        dist[s] = 0
        queue = [s]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            if 2 * dist[v] >= best - 1:
                continue
            for w in h.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v]:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def special_case(h: Graph, k: int):
    """Polynomial special cases of the densest-subgraph problem.

    Returns the optimal edge count, or None when no special case applies.
    """
    if k >= h.n:
        return h.m
    if h.m == h.n - 1 and is_connected(h):  # tree
        return k - 1
    if k < girth(h):
        return k - 1
    return None


def survivors_if_vaccinated(inst: ConvertedInstance, vaccinated) -> int:
    """Deterministic absorbed survivor count for a converted instance."""
    vacc = set(int(v) for v in vaccinated)
    if inst.x in vacc:
        raise ValueError("the infectious hub x cannot be vaccinated")
    n_h = len(inst.y_nodes)
    alive = n_h + 1  # X u Y never die
    for j, (a, b) in enumerate(inst.h_edges):
        z = int(inst.z_nodes[j])
        if z in vacc or (
            int(inst.y_nodes[a]) in vacc and int(inst.y_nodes[b]) in vacc
        ):
            alive += 1
    return alive


def optimal_vaccination_bruteforce(inst: ConvertedInstance, k: int):
    """Exhaustive max of survivors over all k-subsets of non-infectious nodes.

    Returns (vaccinated node set, expected survivors).  The enumeration
    uses precomputed Y-subset tables but still evaluates every subset.
    """
    n_y = len(inst.y_nodes)
    n_z = len(inst.z_nodes)
    if not 0 <= k < inst.graph.n:
        raise ValueError("k must lie in [0, n_G)")
    if k > n_y + n_z:
        raise ValueError("k exceeds the number of vaccinatable nodes")
    _check_guard(math.comb(n_y + n_z, k))
    if n_y + n_z > 62:
        raise EnumerationGuardError("instance too large for bitmask enumeration")

    pair_masks = [
        (1 << int(a)) | (1 << int(b)) for a, b in inst.h_edges
    ]
    saved = np.zeros(1 << n_y, dtype=np.int64)
    for ymask in range(1 << n_y):
        bits = 0
        for j, pm in enumerate(pair_masks):
            if pm & ymask == pm:
                bits |= 1 << j
        saved[ymask] = bits

    mask, saved_z = best_vaccination_mask(n_y, n_z, k, saved)
    chosen = set()
    for i in range(n_y):
        if mask >> i & 1:
            chosen.add(int(inst.y_nodes[i]))
    for j in range(n_z):
        if mask >> (n_y + j) & 1:
            chosen.add(int(inst.z_nodes[j]))
    return frozenset(chosen), n_y + 1 + int(saved_z)


def expected_survivors_mc(
    g: Graph,
    p: DiseaseParams,
    vaccinated,
    initial_infectious,
    reps: int,
    rng: np.random.Generator,
    max_rounds: int = 100_000,
):
    """Monte Carlo mean survivors with standard error."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    comp0 = np.full(g.n, S, dtype=np.int8)
    for v in vaccinated:
        comp0[v] = 4
    for v in initial_infectious:
        if comp0[v] != S:
            raise ValueError(f"initial infectious node {v} is vaccinated")
        comp0[v] = I
    survivors = np.empty(reps)
    for r in range(reps):
        st = EpidemicState(compartments=comp0.copy(), round=0)
        out = run_to_absorption(st, g, p, rng, max_rounds=max_rounds)
        survivors[r] = g.n - out.dead
    se = survivors.std(ddof=1) / math.sqrt(reps) if reps > 1 else 0.0
    return float(survivors.mean()), float(se)


@dataclass
class Claim1Result:
    n_h: int
    m_h: int
    k: int
    opt_h: int
    opt_g: int
    holds: bool


def verify_claim1(h: Graph, k: int) -> Claim1Result:
    """Check OPT_G(k) == OPT_H(k) + n_H + 1 on the converted instance."""
    _, opt_h = densest_subgraph_bruteforce(h, k)
    inst = convert(h)
    _, opt_g = optimal_vaccination_bruteforce(inst, k)
    return Claim1Result(
        n_h=h.n,
        m_h=h.m,
        k=k,
        opt_h=opt_h,
        opt_g=opt_g,
        holds=opt_g == opt_h + h.n + 1,
    )
