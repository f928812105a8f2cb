"""Structural node scores: eigenvector, closeness, betweenness.

Weighted shortest-path variants use edge lengths 1 - w, compared in
lexicographic (total length, hop count) order.  Zero-length edges (w = 1)
are therefore well defined, and setting every weight to 1 reproduces the
unweighted scores exactly.  Betweenness sums over unordered pairs and is
unnormalized; only the induced ranking matters downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


class ConvergenceError(RuntimeError):
    def __init__(self, residual: float, max_iter: int):
        super().__init__(
            f"power iteration did not converge within {max_iter} iterations "
            f"(residual {residual:.3e})"
        )
        self.residual = residual


@dataclass
class ScoreVector:
    values: np.ndarray
    label: str

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if not np.isfinite(self.values).all():
            raise ValueError(f"non-finite score in {self.label!r}")


def _edge_lengths(g: Graph) -> np.ndarray:
    # clip guards against 1 - w rounding below zero for w == 1
    return np.maximum(1.0 - g.adj_weights, 0.0)


def eigenvector_centrality(
    g: Graph,
    weighted: bool = False,
    tol: float = 1e-8,
    max_iter: int = 1000,
) -> ScoreVector:
    """Principal eigenvector of the (weighted) adjacency matrix.

    Power iteration runs on A + I so that bipartite graphs (e.g. stars)
    converge; the shift leaves the eigenvector unchanged.  Iterates are
    L2-normalized and convergence is declared when successive iterates
    differ by less than tol in the maximum norm.
    """
    mat = g.csr if weighted else g.unweighted_csr
    x = np.full(g.n, 1.0 / np.sqrt(g.n))
    residual = np.inf
    for _ in range(max_iter):
        y = mat @ x + x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            break  # unreachable: the identity shift keeps y != 0
        y /= norm
        residual = np.abs(y - x).max()
        x = y
        if residual < tol:
            return ScoreVector(x, "weigen" if weighted else "eigen")
    raise ConvergenceError(residual, max_iter)


def closeness_centrality(g: Graph, weighted: bool = False) -> ScoreVector:
    """Component-scaled closeness.

    c(v) = ((r - 1) / sum of distances to v's component) * ((r - 1)/(n - 1))
    with r the component size; isolated nodes score 0.  Weighted distances
    use lengths 1 - w; if a node's component collapses to total weighted
    distance 0 (all weights 1), hop distances are used so the scores agree
    with the unweighted ones.
    """
    n = g.n
    if weighted:
        sums, hop_sums, reach = _kernels.dijkstra_distance_sums(
            g.indptr, g.indices, _edge_lengths(g)
        )
        sums = np.where(sums > 0.0, sums, hop_sums)
    else:
        sums, reach = _kernels.bfs_distance_sums(g.indptr, g.indices)
    values = np.zeros(n)
    ok = (reach > 1) & (sums > 0.0)
    if n > 1:
        r1 = reach[ok] - 1.0
        values[ok] = (r1 / sums[ok]) * (r1 / (n - 1))
    return ScoreVector(values, "wcloseness" if weighted else "closeness")


def betweenness_centrality(g: Graph, weighted: bool = False) -> ScoreVector:
    """Unnormalized betweenness over unordered node pairs."""
    if weighted:
        bc = _kernels.brandes_weighted(g.indptr, g.indices, _edge_lengths(g))
    else:
        bc = _kernels.brandes_unweighted(g.indptr, g.indices)
    return ScoreVector(bc / 2.0, "wbetweenness" if weighted else "betweenness")
