"""The 16 vaccination scorers and the top-floor(alpha*n) selection rule."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .centrality import (
    ScoreVector,
    betweenness_centrality,
    closeness_centrality,
    eigenvector_centrality,
)
from .graph import Graph
from .model import DiseaseParams


class StrategyId(enum.Enum):
    RANDOM = "random"
    DEGREE = "degree"
    WEIGHTED_DEGREE = "wdegree"
    EIGENVECTOR = "eigen"
    WEIGHTED_EIGENVECTOR = "weigen"
    CLOSENESS = "closeness"
    WEIGHTED_CLOSENESS = "wcloseness"
    BETWEENNESS = "betweenness"
    WEIGHTED_BETWEENNESS = "wbetweenness"
    DEATH = "death"
    NEIGHBORS_DEATH = "ndeath"
    WEIGHTED_NEIGHBORS_DEATH = "wndeath"
    EXPECTED_FATALITY_1 = "ef1"
    EXPECTED_FATALITY_2 = "ef2"
    EXPECTED_FATALITY_3 = "ef3"
    HYBRID = "hybrid"


STRATEGY_NAMES = tuple(s.value for s in StrategyId)

# strategies whose scores depend only on graph structure, not on the
# sampled disease parameters or the rng
STRUCTURAL = frozenset(
    {
        StrategyId.DEGREE,
        StrategyId.WEIGHTED_DEGREE,
        StrategyId.EIGENVECTOR,
        StrategyId.WEIGHTED_EIGENVECTOR,
        StrategyId.CLOSENESS,
        StrategyId.WEIGHTED_CLOSENESS,
        StrategyId.BETWEENNESS,
        StrategyId.WEIGHTED_BETWEENNESS,
    }
)


@dataclass
class VaccinationPlan:
    nodes: np.ndarray  # sorted node ids, exactly floor(alpha * n) of them
    alpha: float


def neighbors_death(g: Graph, p: DiseaseParams) -> ScoreVector:
    """nd(v) = sum of omega_d over v's neighbors."""
    return ScoreVector(g.unweighted_csr @ p.omega_d, "ndeath")


def weighted_neighbors_death(g: Graph, p: DiseaseParams) -> ScoreVector:
    """wnd(v) = sum of w({v,u}) * omega_d(u) over v's neighbors."""
    return ScoreVector(g.csr @ p.omega_d, "wndeath")


def _neighbor_share(g: Graph, per_node: np.ndarray) -> np.ndarray:
    """sum_u w({v,u}) * per_node(u) / weighted_degree(u)."""
    wd = g.weighted_degrees
    safe = np.where(wd > 0.0, wd, 1.0)
    return g.csr @ (per_node / safe)


def expected_fatality_1(g: Graph, p: DiseaseParams) -> ScoreVector:
    return ScoreVector(_neighbor_share(g, p.omega_d) + p.omega_d, "ef1")


def expected_fatality_2(g: Graph, p: DiseaseParams) -> ScoreVector:
    values = (
        _neighbor_share(g, p.omega_d)
        + 1.0
        - p.omega_d
        - p.gamma * p.omega_r
    )
    return ScoreVector(values, "ef2")


def expected_fatality_3(g: Graph, p: DiseaseParams) -> ScoreVector:
    values = _neighbor_share(g, p.omega_d * p.omega_i) * (1.0 - p.omega_d)
    return ScoreVector(values, "ef3")


def rank_descending(values: np.ndarray) -> np.ndarray:
    """Distinct 1-based ranks, highest value first, ties by ascending id."""
    n = len(values)
    order = np.lexsort((np.arange(n), -np.asarray(values)))
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(1, n + 1)
    return ranks


def hybrid_score(
    g: Graph, p: DiseaseParams, betweenness: ScoreVector | None = None
) -> ScoreVector:
    """Equal-weight rank fusion of betweenness and expected fatality 3.

    The combined score is -(rank_b + rank_ef3), so a lower rank sum wins.
    A precomputed betweenness vector may be passed to avoid recomputation.
    """
    if betweenness is None:
        betweenness = betweenness_centrality(g, weighted=False)
    rb = rank_descending(betweenness.values)
    re = rank_descending(expected_fatality_3(g, p).values)
    return ScoreVector(-(rb + re).astype(np.float64), "hybrid")


def score(
    id: StrategyId,
    g: Graph,
    p: DiseaseParams,
    rng: np.random.Generator | None = None,
) -> ScoreVector:
    """Dispatch to the scorer named by ``id``.

    Only RANDOM consumes the rng; everything else is deterministic given
    (g, p).
    """
    if id is StrategyId.RANDOM:
        if rng is None:
            raise ValueError("the random strategy needs an rng")
        return ScoreVector(rng.uniform(0.0, 1.0, g.n), "random")
    if id is StrategyId.DEGREE:
        return ScoreVector(g.degrees.astype(np.float64), "degree")
    if id is StrategyId.WEIGHTED_DEGREE:
        return ScoreVector(g.weighted_degrees, "wdegree")
    if id is StrategyId.EIGENVECTOR:
        return eigenvector_centrality(g, weighted=False)
    if id is StrategyId.WEIGHTED_EIGENVECTOR:
        return eigenvector_centrality(g, weighted=True)
    if id is StrategyId.CLOSENESS:
        return closeness_centrality(g, weighted=False)
    if id is StrategyId.WEIGHTED_CLOSENESS:
        return closeness_centrality(g, weighted=True)
    if id is StrategyId.BETWEENNESS:
        return betweenness_centrality(g, weighted=False)
    if id is StrategyId.WEIGHTED_BETWEENNESS:
        return betweenness_centrality(g, weighted=True)
    if id is StrategyId.DEATH:
        return ScoreVector(p.omega_d.copy(), "death")
    if id is StrategyId.NEIGHBORS_DEATH:
        return neighbors_death(g, p)
    if id is StrategyId.WEIGHTED_NEIGHBORS_DEATH:
        return weighted_neighbors_death(g, p)
    if id is StrategyId.EXPECTED_FATALITY_1:
        return expected_fatality_1(g, p)
    if id is StrategyId.EXPECTED_FATALITY_2:
        return expected_fatality_2(g, p)
    if id is StrategyId.EXPECTED_FATALITY_3:
        return expected_fatality_3(g, p)
    if id is StrategyId.HYBRID:
        return hybrid_score(g, p)
    raise ValueError(f"unknown strategy {id!r}")


def select_vaccinees(scores: ScoreVector, alpha: float) -> VaccinationPlan:
    """Pick the floor(alpha * n) highest-scoring nodes, ties by ascending id."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    n = len(scores.values)
    # epsilon guards floor against float artifacts like 0.3 * 10 = 2.9999...
    k = int(np.floor(alpha * n + 1e-9))
    order = np.lexsort((np.arange(n), -scores.values))
    return VaccinationPlan(nodes=np.sort(order[:k]), alpha=alpha)
