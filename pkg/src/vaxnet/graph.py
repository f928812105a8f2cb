"""Immutable weighted undirected simple graphs with contiguous node ids.

Graphs are stored as CSR adjacency (sorted neighbor lists) plus a canonical
edge array with ``u < v`` rows sorted lexicographically.  All edge weights
lie in (0, 1]; unweighted graphs carry weight 1 on every edge.
"""

from __future__ import annotations

import io
import logging
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np
from scipy import sparse

from ._kernels import edge_jaccard_numerators

log = logging.getLogger(__name__)

PathOrStream = Union[str, Path, IO[str]]


class EdgeListError(ValueError):
    """Malformed or empty edge-list input."""


class Graph:
    """Weighted undirected simple graph, immutable after construction."""

    def __init__(self, n, edges, weights=None, node_labels=None):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n <= 0:
            raise ValueError("graph must have at least one node")
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (edges[:, 0] == edges[:, 1]).any():
                raise ValueError("self-loops are not allowed")
        # canonical: u < v, rows sorted by (u, v)
        u = edges.min(axis=1)
        v = edges.max(axis=1)
        order = np.lexsort((v, u))
        u, v = u[order], v[order]
        canon = np.column_stack([u, v])
        if len(canon) > 1 and ((u[1:] == u[:-1]) & (v[1:] == v[:-1])).any():
            raise ValueError("duplicate edges are not allowed")

        if weights is None:
            weights = np.ones(len(canon))
        else:
            weights = np.asarray(weights, dtype=np.float64)[order]
            if weights.shape != (len(canon),):
                raise ValueError("weights must have one entry per edge")
            if weights.size and (weights.min() <= 0.0 or weights.max() > 1.0):
                raise ValueError("edge weights must lie in (0, 1]")

        self.n = int(n)
        self.edges = canon
        self.edge_weights = weights
        self.node_labels = None if node_labels is None else np.asarray(node_labels)

        # symmetric CSR adjacency with sorted neighbor lists
        both = np.concatenate([u, v])
        other = np.concatenate([v, u])
        w2 = np.concatenate([weights, weights])
        adj_order = np.lexsort((other, both))
        self.indices = other[adj_order]
        self.adj_weights = w2[adj_order]
        counts = np.bincount(both, minlength=self.n)
        self.indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def weighted_degrees(self) -> np.ndarray:
        out = np.zeros(self.n)
        np.add.at(out, np.repeat(np.arange(self.n), self.degrees), self.adj_weights)
        return out

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Weighted adjacency matrix."""
        return sparse.csr_matrix(
            (self.adj_weights, self.indices, self.indptr), shape=(self.n, self.n)
        )

    @cached_property
    def unweighted_csr(self) -> sparse.csr_matrix:
        return sparse.csr_matrix(
            (np.ones(len(self.indices)), self.indices, self.indptr),
            shape=(self.n, self.n),
        )

    def neighbors(self, v: int) -> np.ndarray:
        self._check_node(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        self._check_node(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def weighted_degree(self, v: int) -> float:
        self._check_node(v)
        return float(self.adj_weights[self.indptr[v] : self.indptr[v + 1]].sum())

    def edge_weight(self, u: int, v: int) -> float:
        self._check_node(u)
        self._check_node(v)
        sl = slice(self.indptr[u], self.indptr[u + 1])
        pos = np.searchsorted(self.indices[sl], v)
        row = self.indices[sl]
        if pos >= len(row) or row[pos] != v:
            raise KeyError(f"no edge {{{u}, {v}}}")
        return float(self.adj_weights[sl][pos])

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.edge_weights, other.edge_weights)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(source: PathOrStream, directed: bool = False) -> Graph:
    """Load a SNAP-style edge list.

    Lines starting with ``#`` and blank lines are ignored.  Each remaining
    line holds two whitespace-separated integer ids, optionally followed by
    a weight.  For ``directed`` input an undirected edge {u, v} exists iff
    (u, v) or (v, u) appears.  Node ids are compacted to 0..n-1 in order of
    first appearance; self-loops and duplicates are dropped and counted.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r") as fh:
            return load_edge_list(fh, directed=directed)

    id_map: dict[int, int] = {}
    seen: dict[tuple[int, int], float] = {}
    n_self = 0
    n_dup = 0

    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(f"line {lineno}: expected 'u v [w]', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise EdgeListError(f"line {lineno}: {exc}") from None
        ia = id_map.setdefault(a, len(id_map))
        ib = id_map.setdefault(b, len(id_map))
        if ia == ib:
            n_self += 1
            continue
        key = (min(ia, ib), max(ia, ib))
        if key in seen:
            n_dup += 1
            continue
        seen[key] = w

    if not id_map:
        raise EdgeListError("empty edge list")
    if n_self or n_dup:
        log.info("dropped %d self-loop(s) and %d duplicate edge(s)", n_self, n_dup)

    edges = np.array(list(seen.keys()), dtype=np.int64)
    weights = np.array(list(seen.values()))
    labels = np.empty(len(id_map), dtype=np.int64)
    for orig, new in id_map.items():
        labels[new] = orig
    return Graph(len(id_map), edges, weights, node_labels=labels)


def dump_edge_list(g: Graph, sink: PathOrStream, include_weights: bool = False) -> None:
    """Write the graph in SNAP edge-list format, edges sorted by (min, max)."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w") as fh:
            dump_edge_list(g, fh, include_weights=include_weights)
            return
    for (u, v), w in zip(g.edges, g.edge_weights):
        if include_weights:
            sink.write(f"{u} {v} {w:.9f}\n")
        else:
            sink.write(f"{u} {v}\n")


def edge_list_text(g: Graph, include_weights: bool = False) -> str:
    buf = io.StringIO()
    dump_edge_list(g, buf, include_weights=include_weights)
    return buf.getvalue()


def jaccard_weights(g: Graph) -> Graph:
    """Reweight every edge by the Jaccard index of closed neighborhoods.

    For an edge {v, u}: w = |N^(v) & N^(u)| / |N(v) | N(u)|.  The closed
    neighborhoods both contain u and v, so every weight is strictly
    positive; existing weights are discarded.
    """
    if g.m == 0:
        return Graph(g.n, g.edges, node_labels=g.node_labels)
    common = edge_jaccard_numerators(
        g.indptr, g.indices, g.edges[:, 0], g.edges[:, 1]
    )
    deg = g.degrees
    num = common + 2.0
    den = deg[g.edges[:, 0]] + deg[g.edges[:, 1]] - common
    return Graph(g.n, g.edges, num / den, node_labels=g.node_labels)
