"""Graph exploration techniques: traversals, walks, uniform and weighted sampling.

Traversals follow the stub-level scheme: a queue holds discovered but not yet
followed half-edges, and an edge that has been followed is never followed
back (its partner half-edge is dropped from the queue).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

import numpy as np

from .degree import DegreeDistribution, DegreeSample
from .generator import DegreeSequence, realize_sequence
from .graph import Multigraph


@dataclass(frozen=True)
class SampleSequence:
    """Ordered visits produced by a sampler.

    ``population`` is the coverage denominator: the start node's component
    for component-scoped traversals and walks, ``|V|`` otherwise.
    ``times`` carries the stub index at which each node was discovered
    (on-the-fly sampling only). ``followed`` lists the half-edges a traversal
    followed, as ``(from, to, edge id)``, when requested.
    """

    nodes: np.ndarray
    degrees: np.ndarray
    coverage: float
    revisits_allowed: bool
    population: int
    times: np.ndarray | None = None
    followed: tuple[tuple[int, int, int], ...] | None = None

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def visits(self) -> list[tuple[int, int]]:
        return list(zip(self.nodes.tolist(), self.degrees.tolist()))

    def degree_sample(self, m: int | None = None) -> DegreeSample:
        d = self.degrees if m is None else self.degrees[:m]
        return DegreeSample(tuple(d.tolist()), self.coverage if m is None else None)

    def write_csv(self, stream: IO[str]) -> None:
        stream.write("position,node_id,degree\n")
        for i, (v, k) in enumerate(zip(self.nodes.tolist(), self.degrees.tolist())):
            stream.write(f"{i},{v},{k}\n")


def _sequence(nodes, degrees, population, revisits_allowed, **extra) -> SampleSequence:
    nodes = np.asarray(nodes, dtype=np.int64)
    degrees = np.asarray(degrees, dtype=np.int64)
    unique = len(np.unique(nodes)) if revisits_allowed else len(nodes)
    coverage = unique / population if population else 1.0
    return SampleSequence(nodes, degrees, min(coverage, 1.0), revisits_allowed, population, **extra)


def _pick(items: list[int], n: int, rng: np.random.Generator) -> list[int]:
    """``n`` items uniformly without replacement, returned in original order."""
    k = len(items)
    if k <= n:
        return items
    idx = list(range(k))
    for j, r in enumerate(rng.random(n).tolist()):
        s = j + min(int(r * (k - j)), k - j - 1)
        idx[j], idx[s] = idx[s], idx[j]
    return [items[i] for i in sorted(idx[:n])]


# -- traversals ---------------------------------------------------------------


@dataclass(frozen=True)
class TraversalPolicy:
    """Queue discipline: ``BFS``, ``DFS``, ``FF`` (burn probability ``p``) or ``SBS`` (``n`` names)."""

    kind: str
    p: float | None = None
    n: int | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind == "FF":
            if self.p is None or not 0 < self.p <= 1:
                raise ValueError(f"Forest Fire needs p in (0, 1], got {self.p}")
        elif kind == "SBS":
            if self.n is None or int(self.n) != self.n or self.n < 1:
                raise ValueError(f"Snowball needs an integer n >= 1, got {self.n}")
            object.__setattr__(self, "n", int(self.n))
        elif kind not in ("BFS", "DFS"):
            raise ValueError(f"unknown traversal policy {self.kind!r}")

    @classmethod
    def bfs(cls) -> "TraversalPolicy":
        return cls("BFS")

    @classmethod
    def dfs(cls) -> "TraversalPolicy":
        return cls("DFS")

    @classmethod
    def forest_fire(cls, p: float) -> "TraversalPolicy":
        return cls("FF", p=p)

    @classmethod
    def snowball(cls, n: int) -> "TraversalPolicy":
        return cls("SBS", n=n)

    @property
    def label(self) -> str:
        if self.kind == "FF":
            return f"FF:{self.p:g}"
        if self.kind == "SBS":
            return f"SBS:{self.n}"
        return self.kind


def traverse(
    g: Multigraph,
    policy: TraversalPolicy,
    start: int,
    stop_fraction: float = 1.0,
    rng: np.random.Generator | None = None,
    *,
    max_nodes: int | None = None,
    across_components: bool = False,
    record_edges: bool = False,
) -> SampleSequence:
    """Explore ``g`` from ``start`` without revisiting nodes.

    Stops once ``ceil(stop_fraction * population)`` distinct nodes are
    visited (or ``max_nodes``, if smaller). By default the population is the
    start node's component. With ``across_components`` it is ``|V|``, and an
    exhausted component is followed by a restart at an unvisited node drawn
    with probability proportional to degree, i.e. the owner of the next
    unmatched stub in the continuous-index picture. Isolated nodes are never
    reached that way.

    Forest Fire and Snowball can die out inside a component; they are then
    revived from a uniformly chosen sampled node that still has unexplored
    half-edges, applying the policy's selection to those half-edges.
    """
    if rng is None:
        rng = np.random.default_rng()
    g._check(start)
    if not 0 < stop_fraction <= 1:
        raise ValueError(f"stop_fraction must be in (0, 1], got {stop_fraction}")
    indptr, nbr, eid, owner, deg = g.adjacency_lists
    n = g.node_count
    if across_components:
        population = n
        reachable = int(np.count_nonzero(g.degrees)) + (1 if deg[start] == 0 else 0)
    else:
        population = reachable = g.component_size(start)
    target = math.ceil(stop_fraction * population - 1e-9)
    if max_nodes is not None:
        target = min(target, max_nodes)
    target = max(1, min(target, reachable))

    kind = policy.kind
    lifo = kind == "DFS"
    burn_p = policy.p if kind == "FF" else None
    names = policy.n if kind == "SBS" else None

    visited = bytearray(n)
    used = bytearray(g.edge_count)
    open_cnt = [0] * n
    open_nodes: list[int] = []
    open_pos: dict[int, int] = {}
    order: list[int] = []
    followed: list[tuple[int, int, int]] | None = [] if record_edges else None
    queue: deque[int] = deque()

    def close_half(v: int) -> None:
        open_cnt[v] -= 1
        if open_cnt[v] == 0:
            i = open_pos.pop(v)
            last = open_nodes.pop()
            if last != v:
                open_nodes[i] = last
                open_pos[last] = i

    def schedule(v: int, reviving: bool = False) -> None:
        lo, hi = indptr[v], indptr[v + 1]
        if names is not None:
            # Snowball names n of all k_v entries; already-followed ones are void
            cand = list(range(lo, hi))
            if reviving:
                cand = [h for h in cand if not used[eid[h]]]
            chosen = [h for h in _pick(cand, names, rng) if not used[eid[h]]]
        else:
            chosen = [h for h in range(lo, hi) if not used[eid[h]]]
            if burn_p is not None and burn_p < 1 and chosen:
                coins = rng.random(len(chosen)).tolist()
                chosen = [h for h, c in zip(chosen, coins) if c < burn_p]
        queue.extend(chosen)

    def discover(v: int) -> None:
        visited[v] = 1
        order.append(v)
        if deg[v]:
            open_cnt[v] = deg[v]
            open_pos[v] = len(open_nodes)
            open_nodes.append(v)

    restart_order: list[int] | None = None
    restart_ptr = 0

    discover(start)
    schedule(start)
    while len(order) < target:
        if not queue:
            if open_nodes and kind in ("FF", "SBS"):
                while open_nodes and not queue:
                    schedule(open_nodes[int(rng.integers(len(open_nodes)))], reviving=True)
                continue
            if not across_components:
                break
            if restart_order is None:
                # exponential race: ascending E/k is degree-weighted sampling
                # without replacement, and stays so after skipping visited nodes
                d = g.degrees
                pos = d > 0
                keys = np.full(n, np.inf)
                keys[pos] = rng.exponential(size=int(pos.sum())) / d[pos]
                restart_order = np.argsort(keys, kind="stable")[: int(pos.sum())].tolist()
            while restart_ptr < len(restart_order) and visited[restart_order[restart_ptr]]:
                restart_ptr += 1
            if restart_ptr == len(restart_order):
                break
            v = restart_order[restart_ptr]
            discover(v)
            schedule(v)
            continue
        h = queue.pop() if lifo else queue.popleft()
        e = eid[h]
        if used[e]:
            continue
        u, w = owner[h], nbr[h]
        used[e] = 1
        if followed is not None:
            followed.append((u, w, e))
        fresh = not visited[w]
        if fresh:
            discover(w)
        close_half(u)
        close_half(w)
        if fresh:
            schedule(w)

    nodes = np.asarray(order, dtype=np.int64)
    return _sequence(
        nodes,
        g.degrees[nodes],
        population,
        False,
        followed=tuple(followed) if followed is not None else None,
    )


def on_the_fly_sample(
    source: DegreeDistribution | DegreeSequence | Sequence[int],
    n: int | None = None,
    stop_fraction: float = 1.0,
    rng: np.random.Generator | None = None,
    *,
    record_edges: bool = False,
) -> SampleSequence:
    """Stub-level traversal of a configuration-model graph matched on the fly.

    Every stub gets an independent uniform index in ``[0, 1]``; a popped stub
    is matched to the unmatched stub with the smallest index. The first node
    is the owner of the globally smallest stub, and when the queue empties the
    walk resumes at the owner of the smallest unmatched stub, so the whole
    node order equals the order of each node's minimal stub index.

    ``source`` is a distribution (realized on ``n`` nodes) or an explicit
    degree sequence. ``times`` in the result holds each node's discovery index.
    """
    if rng is None:
        rng = np.random.default_rng()
    if isinstance(source, DegreeDistribution):
        if n is None:
            raise ValueError("n is required when sampling from a distribution")
        seq = realize_sequence(source, n, rng)
        degrees = seq.as_array()
    elif isinstance(source, DegreeSequence):
        degrees = source.as_array()
    else:
        degrees = np.asarray(source, dtype=np.int64)
    total = int(degrees.sum())
    if total % 2:
        raise ValueError("odd stub count")
    if total == 0:
        raise ValueError("no stubs to match")
    if not 0 < stop_fraction <= 1:
        raise ValueError(f"stop_fraction must be in (0, 1], got {stop_fraction}")
    n_nodes = len(degrees)
    reachable = int(np.count_nonzero(degrees))
    target = max(1, min(reachable, math.ceil(stop_fraction * n_nodes - 1e-9)))

    stub_owner = np.repeat(np.arange(n_nodes, dtype=np.int64), degrees)
    index = rng.random(total)
    by_index = np.argsort(index, kind="stable")
    first_stub = np.concatenate([[0], np.cumsum(degrees)])
    # a node's stubs enter the queue in ascending index order
    stubs_of = [
        sorted(range(first_stub[v], first_stub[v + 1]), key=index.__getitem__) for v in range(n_nodes)
    ]
    owner_l = stub_owner.tolist()
    index_l = index.tolist()
    scan = by_index.tolist()

    matched = bytearray(total)
    visited = bytearray(n_nodes)
    order: list[int] = []
    times: list[float] = []
    pairs: list[tuple[int, int, int]] | None = [] if record_edges else None
    queue: deque[int] = deque()
    ptr = 0

    def next_unmatched() -> int:
        nonlocal ptr
        while matched[scan[ptr]]:
            ptr += 1
        return scan[ptr]

    while len(order) < target:
        if not queue:
            b = next_unmatched()
            v = owner_l[b]
            visited[v] = 1
            order.append(v)
            times.append(index_l[b])
            queue.extend(stubs_of[v])
            continue
        a = queue.popleft()
        if matched[a]:
            continue
        matched[a] = 1
        b = next_unmatched()
        matched[b] = 1
        w = owner_l[b]
        if pairs is not None:
            pairs.append((owner_l[a], w, len(pairs)))
        if not visited[w]:
            visited[w] = 1
            order.append(w)
            times.append(index_l[b])
            queue.extend(s for s in stubs_of[w] if s != b)

    nodes = np.asarray(order, dtype=np.int64)
    return _sequence(
        nodes,
        degrees[nodes],
        n_nodes,
        False,
        times=np.asarray(times),
        followed=tuple(pairs) if pairs is not None else None,
    )


def weighted_wor_sample(
    degrees: DegreeSequence | Sequence[int] | np.ndarray, m: int, rng: np.random.Generator | None = None
) -> SampleSequence:
    """Draw ``m`` distinct nodes, each draw proportional to degree among the rest.

    Uses the exponential race: sorting ``E_v / k_v`` with ``E_v ~ Exp(1)``
    gives exactly the sequential degree-weighted order.
    """
    if rng is None:
        rng = np.random.default_rng()
    d = degrees.as_array() if isinstance(degrees, DegreeSequence) else np.asarray(degrees, dtype=np.int64)
    pos = np.flatnonzero(d > 0)
    if m < 1 or m > len(pos):
        raise ValueError(f"m must be in [1, {len(pos)}] (nodes with positive degree), got {m}")
    keys = rng.exponential(size=len(pos)) / d[pos]
    if m < len(pos):
        part = np.argpartition(keys, m - 1)[:m]
        chosen = part[np.argsort(keys[part], kind="stable")]
    else:
        chosen = np.argsort(keys, kind="stable")
    nodes = pos[chosen]
    return _sequence(nodes, d[nodes], len(d), False)


# -- walks --------------------------------------------------------------------


def _walk_setup(g: Multigraph, start: int, steps: int, burn_in: int):
    g._check(start)
    if g.degrees[start] == 0:
        raise ValueError("no incident edges")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")


def default_burn_in(g: Multigraph) -> int:
    return 10 * g.node_count


def random_walk(
    g: Multigraph,
    start: int,
    steps: int,
    burn_in: int = 0,
    rng: np.random.Generator | None = None,
) -> SampleSequence:
    """Simple random walk over half-edges.

    Makes ``burn_in + steps`` moves and keeps the ``steps + 1`` positions
    after the burn-in. A self-loop is two of the node's ``k_v`` choices.
    """
    if rng is None:
        rng = np.random.default_rng()
    _walk_setup(g, start, steps, burn_in)
    indptr, nbr, _, _, deg = g.adjacency_lists
    total = burn_in + steps
    out = [start] if burn_in == 0 else []
    v = start
    for i, r in enumerate(rng.random(total).tolist(), start=1):
        k = deg[v]
        j = int(r * k)
        if j == k:
            j -= 1
        v = nbr[indptr[v] + j]
        if i >= burn_in:
            out.append(v)
    nodes = np.asarray(out, dtype=np.int64)
    return _sequence(nodes, g.degrees[nodes], g.component_size(start), True)


def mhrw(
    g: Multigraph,
    start: int,
    steps: int,
    burn_in: int = 0,
    rng: np.random.Generator | None = None,
) -> SampleSequence:
    """Metropolis-Hastings random walk targeting the uniform distribution.

    From ``u`` a uniform half-edge proposes ``w``; the move is accepted with
    probability ``min(1, k_u / k_w)``, otherwise ``u`` is recorded again.
    """
    if rng is None:
        rng = np.random.default_rng()
    _walk_setup(g, start, steps, burn_in)
    indptr, nbr, _, _, deg = g.adjacency_lists
    total = burn_in + steps
    props = rng.random(total).tolist()
    accepts = rng.random(total).tolist()
    out = [start] if burn_in == 0 else []
    v = start
    for i in range(total):
        k = deg[v]
        j = int(props[i] * k)
        if j == k:
            j -= 1
        w = nbr[indptr[v] + j]
        kw = deg[w]
        if kw <= k or accepts[i] * kw < k:
            v = w
        if i + 1 >= burn_in:
            out.append(v)
    nodes = np.asarray(out, dtype=np.int64)
    return _sequence(nodes, g.degrees[nodes], g.component_size(start), True)


def mhrw_transition_row(g: Multigraph, u: int) -> dict[int, Fraction]:
    """Exact MHRW transition probabilities out of ``u``, as fractions."""
    g._check(u)
    k_u = g.degree(u)
    if k_u == 0:
        return {u: Fraction(1)}
    row: dict[int, Fraction] = {}
    for w, _ in g.neighbors(u):
        if w == u:
            continue
        p = Fraction(1, k_u) * min(Fraction(1), Fraction(k_u, g.degree(w)))
        row[w] = row.get(w, Fraction(0)) + p
    row[u] = 1 - sum(row.values(), Fraction(0))
    return row


def rds(
    g: Multigraph,
    start: int,
    n: int,
    steps: int,
    rng: np.random.Generator | None = None,
) -> SampleSequence:
    """Respondent-driven sampling with revisits.

    Each visited node schedules ``min(n, k_u)`` of its adjacency entries,
    chosen uniformly without replacement, at the back of a FIFO queue.
    Returns exactly ``steps`` visits, the first being ``start``.
    """
    if rng is None:
        rng = np.random.default_rng()
    if n < 1:
        raise ValueError("n must be >= 1")
    _walk_setup(g, start, steps, 0)
    indptr, nbr, _, _, deg = g.adjacency_lists
    queue: deque[int] = deque([start])
    out: list[int] = []
    if n == 1:
        draws = iter(rng.random(steps).tolist())
    while len(out) < steps:
        u = queue.popleft()
        out.append(u)
        k = deg[u]
        lo = indptr[u]
        if n == 1:
            j = int(next(draws) * k)
            if j == k:
                j -= 1
            queue.append(nbr[lo + j])
        else:
            for h in _pick(list(range(lo, lo + k)), n, rng):
                queue.append(nbr[h])
    nodes = np.asarray(out, dtype=np.int64)
    return _sequence(nodes, g.degrees[nodes], g.component_size(start), True)


def uniform_sample(g: Multigraph, m: int, rng: np.random.Generator | None = None) -> SampleSequence:
    """``m`` independent uniform draws over all nodes, with replacement."""
    if rng is None:
        rng = np.random.default_rng()
    if g.node_count == 0:
        raise ValueError("empty graph")
    if m < 1:
        raise ValueError("m must be >= 1")
    nodes = rng.integers(g.node_count, size=m)
    return _sequence(nodes, g.degrees[nodes], g.node_count, True)


# -- start nodes ----------------------------------------------------------------


def uniform_start(g: Multigraph, rng: np.random.Generator, nodes: np.ndarray | None = None) -> int:
    """Uniform node among ``nodes`` (default: all nodes with positive degree)."""
    pool = np.flatnonzero(g.degrees > 0) if nodes is None else np.asarray(nodes)
    if len(pool) == 0:
        raise ValueError("no candidate start nodes")
    return int(pool[rng.integers(len(pool))])


def degree_weighted_start(g: Multigraph, rng: np.random.Generator) -> int:
    """Node drawn with probability ``k_v / 2|E|``: a uniformly chosen half-edge's owner."""
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    return int(g.owner[rng.integers(2 * g.edge_count)])


def one_hop_start(g: Multigraph, rng: np.random.Generator) -> int:
    """One random-walk hop from a uniformly chosen non-isolated node."""
    u = uniform_start(g, rng)
    lo, hi = g.indptr[u], g.indptr[u + 1]
    return int(g.nbr[lo + rng.integers(hi - lo)])
