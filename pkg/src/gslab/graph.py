"""Undirected multigraphs with self-loops, plus edge-list I/O."""

from __future__ import annotations

import math
from functools import cached_property
from typing import IO, Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .degree import DegreeDistribution


class AssortativityUndefined(ValueError):
    pass


class Multigraph:
    """Undirected multigraph on nodes ``0..n-1``.

    Edges are stored as an ``(m, 2)`` array; edge ``e`` has id ``e``. Each
    node keeps its incident half-edges in insertion (edge id) order; a
    self-loop contributes two consecutive half-edges to its node. That order
    drives traversal tie-breaking, so it is part of observable behaviour.

    Half-edge ``h`` of node ``v`` lives at ``indptr[v] <= h < indptr[v+1]``
    and points to ``nbr[h]`` through edge ``eid[h]``.
    """

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] | np.ndarray = ()):
        node_count = int(node_count)
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= node_count):
            raise ValueError("edge endpoint out of range")
        e = e.copy()
        e.flags.writeable = False
        self._n = node_count
        self._edges = e

        m = len(e)
        # half-edges interleaved as (e0: u->w, e0: w->u, e1: ...) so a stable
        # sort on the source keeps edge-id order inside each node
        src = e.reshape(-1)
        dst = e[:, ::-1].reshape(-1)
        ids = np.repeat(np.arange(m, dtype=np.int64), 2)
        order = np.argsort(src, kind="stable")
        self._nbr = dst[order]
        self._eid = ids[order]
        self._deg = np.bincount(src, minlength=node_count).astype(np.int64)
        self._indptr = np.concatenate([[0], np.cumsum(self._deg)]).astype(np.int64)
        self._owner = src[order]
        for arr in (self._nbr, self._eid, self._deg, self._indptr, self._owner):
            arr.flags.writeable = False

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def degrees(self) -> np.ndarray:
        return self._deg

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def nbr(self) -> np.ndarray:
        return self._nbr

    @property
    def eid(self) -> np.ndarray:
        return self._eid

    @property
    def owner(self) -> np.ndarray:
        """Node owning each half-edge."""
        return self._owner

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self._deg[v])

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """Incident half-edges of ``v`` as ``(neighbor, edge id)`` pairs."""
        self._check(v)
        lo, hi = self._indptr[v], self._indptr[v + 1]
        return list(zip(self._nbr[lo:hi].tolist(), self._eid[lo:hi].tolist()))

    def _check(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise IndexError(f"node id {v} out of range [0, {self._n})")

    @cached_property
    def adjacency_lists(self) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
        """Python-list copies of ``(indptr, nbr, eid, owner, degrees)`` for tight loops."""
        return (
            self._indptr.tolist(),
            self._nbr.tolist(),
            self._eid.tolist(),
            self._owner.tolist(),
            self._deg.tolist(),
        )

    @cached_property
    def component_labels(self) -> np.ndarray:
        if self._n == 0:
            return np.zeros(0, dtype=np.int64)
        e = self._edges
        a = sp.coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(self._n, self._n))
        _, labels = connected_components(a, directed=False)
        return labels.astype(np.int64)

    def component_size(self, v: int) -> int:
        self._check(v)
        labels = self.component_labels
        return int(np.count_nonzero(labels == labels[v]))

    def largest_component(self) -> np.ndarray:
        """Node ids of the largest connected component (lowest label on ties)."""
        labels = self.component_labels
        if labels.size == 0:
            return labels
        return np.flatnonzero(labels == np.bincount(labels).argmax())

    def degree_distribution(self, nodes: Iterable[int] | None = None) -> DegreeDistribution:
        deg = self._deg if nodes is None else self._deg[np.asarray(list(nodes), dtype=np.int64)]
        return DegreeDistribution.from_degrees(deg.tolist())

    def __repr__(self) -> str:
        return f"Multigraph(node_count={self._n}, edge_count={self.edge_count})"


def degree(g: Multigraph, v: int) -> int:
    return g.degree(v)


def component_of(g: Multigraph, v: int) -> set[int]:
    g._check(v)
    labels = g.component_labels
    return set(np.flatnonzero(labels == labels[v]).tolist())


def assortativity_sums(g: Multigraph) -> tuple[float, float, float, float]:
    """Sums over directed edge endpoints: ``(M, sum x, sum x^2, sum x*y)``.

    ``M = 2|E|``. The first three depend only on the degree sequence (each
    node appears ``k_v`` times as a source); only the cross term changes
    under degree-preserving rewiring.
    """
    k = g.degrees.astype(float)
    e = g.edges
    m2 = 2.0 * len(e)
    sx = math.fsum(k * k)
    sxx = math.fsum(k**3)
    sxy = 2.0 * math.fsum(k[e[:, 0]] * k[e[:, 1]]) if len(e) else 0.0
    return m2, sx, sxx, sxy


def pearson_from_sums(m2: float, sx: float, sxx: float, sxy: float) -> float:
    mean = sx / m2
    var = sxx / m2 - mean * mean
    if var <= 1e-12 * max(1.0, mean * mean):
        raise AssortativityUndefined("assortativity undefined")
    return (sxy / m2 - mean * mean) / var


def assortativity(g: Multigraph) -> float:
    """Degree assortativity: Pearson correlation of endpoint degrees.

    Every undirected edge contributes both ``(k_u, k_w)`` and ``(k_w, k_u)``;
    parallel edges count separately and a self-loop adds ``(k_v, k_v)`` twice.
    """
    if g.edge_count == 0:
        raise AssortativityUndefined("assortativity undefined")
    return pearson_from_sums(*assortativity_sums(g))


def load_edge_list(stream: IO[str] | IO[bytes]) -> Multigraph:
    """Parse a whitespace-separated edge list.

    ``#`` starts a comment line. A ``#nodes N`` header declares the node count
    (needed for trailing isolated nodes); otherwise it is ``max id + 1``.
    """
    edges: list[tuple[int, int]] = []
    declared = None
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("ascii") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            head = line[1:].split()
            if len(head) == 2 and head[0] == "nodes":
                try:
                    declared = int(head[1])
                except ValueError:
                    raise ValueError(f"line {lineno}: bad #nodes header {line!r}") from None
                if declared < 0:
                    raise ValueError(f"line {lineno}: negative node count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            u, w = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer node id in {line!r}") from None
        if u < 0 or w < 0:
            raise ValueError(f"line {lineno}: negative node id")
        edges.append((u, w))
    inferred = 1 + max((max(u, w) for u, w in edges), default=-1)
    if declared is not None and declared < inferred:
        raise ValueError(f"#nodes {declared} smaller than max id + 1 = {inferred}")
    return Multigraph(declared if declared is not None else inferred, edges)


def save_edge_list(g: Multigraph, stream: IO[str]) -> None:
    stream.write(f"#nodes {g.node_count}\n")
    for u, w in g.edges.tolist():
        stream.write(f"{u} {w}\n")
