"""Configuration-model generation and degree-preserving assortativity rewiring."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .degree import DegreeDistribution
from .graph import Multigraph, assortativity_sums, pearson_from_sums


@dataclass(frozen=True)
class DegreeSequence:
    """One target degree per node.

    ``parity_fixed_node`` names the node whose degree :func:`realize_sequence`
    raised by one to make the stub count even (``None`` if no fix was needed).
    """

    degrees: tuple[int, ...]
    parity_fixed_node: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if any(d < 0 for d in self.degrees):
            raise ValueError("negative degree")

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def stub_count(self) -> int:
        return sum(self.degrees)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64)


def apportion(dist: DegreeDistribution, n: int) -> dict[int, int]:
    """Largest-remainder apportionment of ``n`` nodes over the degrees of ``dist``.

    Ties in the remainder go to the smaller degree.
    """
    raw = dist.fractions * n
    counts = np.floor(raw).astype(np.int64)
    short = n - int(counts.sum())
    rem = raw - counts
    order = np.lexsort((dist.degrees, -rem))
    counts[order[:short]] += 1
    return {int(k): int(c) for k, c in zip(dist.degrees, counts) if c > 0}


def realize_sequence(dist: DegreeDistribution, n: int, rng: np.random.Generator) -> DegreeSequence:
    """Materialize ``dist`` on ``n`` nodes, ordered by degree.

    If the stub sum is odd, one node of the smallest positive degree (chosen
    uniformly among them) gets one extra stub.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = apportion(dist, n)
    degrees = np.repeat(np.fromiter(counts.keys(), dtype=np.int64), list(counts.values()))
    fixed = None
    if degrees.sum() % 2:
        # an odd sum implies some odd, hence positive, degree exists
        kmin = degrees[degrees > 0].min()
        candidates = np.flatnonzero(degrees == kmin)
        fixed = int(candidates[rng.integers(len(candidates))])
        degrees[fixed] += 1
    return DegreeSequence(tuple(degrees.tolist()), fixed)


def generate(seq: DegreeSequence | list[int], rng: np.random.Generator) -> Multigraph:
    """Uniform random perfect matching of stubs (configuration model).

    The stub multiset is shuffled and paired consecutively. Self-loops and
    multi-edges are kept.
    """
    degrees = seq.as_array() if isinstance(seq, DegreeSequence) else np.asarray(seq, dtype=np.int64)
    total = int(degrees.sum())
    if total % 2:
        raise ValueError("odd stub count")
    if total == 0:
        raise ValueError("no stubs to match")
    stubs = np.repeat(np.arange(len(degrees), dtype=np.int64), degrees)
    stubs = rng.permutation(stubs)
    return Multigraph(len(degrees), stubs.reshape(-1, 2))


def random_graph(dist: DegreeDistribution, n: int, rng: np.random.Generator) -> Multigraph:
    return generate(realize_sequence(dist, n, rng), rng)


@dataclass
class RewireResult:
    graph: Multigraph
    assortativity: float
    initial_assortativity: float
    target: float
    converged: bool
    steps: int
    accepted: int
    history: list[float] = field(default_factory=list, repr=False)


def rewire_to_assortativity(
    g: Multigraph,
    target_r: float,
    tolerance: float = 0.02,
    max_steps: int = 2_000_000,
    rng: np.random.Generator | None = None,
    record_history: bool = False,
) -> RewireResult:
    """Pairwise edge swaps that move assortativity toward ``target_r``.

    Each step picks two distinct edges uniformly, orients each at random, and
    swaps ``{v1,w1},{v2,w2} -> {v1,w2},{v2,w1}`` only if that strictly
    reduces ``|r - target_r|``. Stops once within ``tolerance`` or after
    ``max_steps`` proposals; hitting the cap is reported via ``converged``.
    """
    if rng is None:
        rng = np.random.default_rng()
    if g.edge_count < 2:
        raise ValueError("rewiring needs at least two edges")
    m2, sx, sxx, sxy = assortativity_sums(g)
    r0 = pearson_from_sums(m2, sx, sxx, sxy)
    mean = sx / m2
    var = sxx / m2 - mean * mean

    edges = g.edges.tolist()
    k = g.degrees.tolist()
    m = len(edges)
    r = r0
    dist = abs(r - target_r)
    history = [r] if record_history else []
    steps = accepted = 0
    batch = 4096
    while dist > tolerance and steps < max_steps:
        n_draw = min(batch, max_steps - steps)
        a = rng.integers(m, size=n_draw).tolist()
        b = rng.integers(m - 1, size=n_draw).tolist()
        flips = rng.integers(4, size=n_draw).tolist()
        for i in range(n_draw):
            steps += 1
            e1 = a[i]
            e2 = b[i]
            if e2 >= e1:
                e2 += 1
            v1, w1 = edges[e1]
            v2, w2 = edges[e2]
            f = flips[i]
            if f & 1:
                v1, w1 = w1, v1
            if f & 2:
                v2, w2 = w2, v2
            kv1, kw1, kv2, kw2 = k[v1], k[w1], k[v2], k[w2]
            delta = 2.0 * (kv1 * kw2 + kv2 * kw1 - kv1 * kw1 - kv2 * kw2)
            if delta == 0.0:
                continue
            r_new = ((sxy + delta) / m2 - mean * mean) / var
            d_new = abs(r_new - target_r)
            if d_new < dist:
                edges[e1] = [v1, w2]
                edges[e2] = [v2, w1]
                sxy += delta
                r, dist = r_new, d_new
                accepted += 1
                if record_history:
                    history.append(r)
                if dist <= tolerance:
                    break
    out = Multigraph(g.node_count, np.asarray(edges, dtype=np.int64).reshape(-1, 2)) if accepted else g
    return RewireResult(out, r, r0, target_r, dist <= tolerance, steps, accepted, history)
