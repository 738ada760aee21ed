"""Degree distributions, empirical estimation and log-binning."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

import numpy as np


class DegreeDistribution:
    """Normalized map from degree ``k`` to the fraction of nodes with that degree.

    Input weights need not sum to one (raw counts are fine); they are
    normalized on construction. Zero-weight entries are dropped.
    """

    __slots__ = ("_k", "_p")

    def __init__(self, weights: Mapping[int, float]):
        items = []
        for k, w in weights.items():
            k_int = int(k)
            if k_int != k or k_int < 0:
                raise ValueError(f"degree must be a non-negative integer, got {k!r}")
            w = float(w)
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"negative or non-finite weight {w!r} for degree {k}")
            if w > 0:
                items.append((k_int, w))
        if not items:
            raise ValueError("distribution has no positive mass")
        items.sort()
        k = np.array([i[0] for i in items], dtype=np.int64)
        p = np.array([i[1] for i in items], dtype=float)
        p /= math.fsum(p)
        k.flags.writeable = False
        p.flags.writeable = False
        self._k = k
        self._p = p

    @classmethod
    def from_arrays(cls, k: Sequence[int], p: Sequence[float]) -> "DegreeDistribution":
        weights: dict[int, float] = {}
        for ki, pi in zip(k, p):
            weights[int(ki)] = weights.get(int(ki), 0.0) + float(pi)
        return cls(weights)

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "DegreeDistribution":
        """Exact distribution of a degree sequence (fraction of nodes per degree)."""
        counts = Counter(int(d) for d in degrees)
        if not counts:
            raise ValueError("empty degree sequence")
        return cls(counts)

    @property
    def degrees(self) -> np.ndarray:
        return self._k

    @property
    def fractions(self) -> np.ndarray:
        return self._p

    @property
    def max_degree(self) -> int:
        return int(self._k[-1])

    def __getitem__(self, k: int) -> float:
        i = np.searchsorted(self._k, k)
        if i < len(self._k) and self._k[i] == k:
            return float(self._p[i])
        return 0.0

    def get(self, k: int, default: float = 0.0) -> float:
        v = self[k]
        return v if v > 0 else default

    def __len__(self) -> int:
        return len(self._k)

    def __iter__(self):
        return iter(int(k) for k in self._k)

    def items(self):
        return [(int(k), float(p)) for k, p in zip(self._k, self._p)]

    def as_dict(self) -> dict[int, float]:
        return dict(self.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeDistribution):
            return NotImplemented
        return np.array_equal(self._k, other._k) and np.array_equal(self._p, other._p)

    def __hash__(self):
        return hash((self._k.tobytes(), self._p.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {p:.6g}" for k, p in self.items()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"DegreeDistribution({{{body}{more}}})"

    @property
    def mean(self) -> float:
        return moments(self)[0]

    def mass_at_zero(self) -> float:
        return self[0]

    def dense(self, kmax: int | None = None) -> np.ndarray:
        """Fractions as a dense array indexed by degree ``0..kmax``."""
        kmax = self.max_degree if kmax is None else kmax
        out = np.zeros(kmax + 1)
        keep = self._k <= kmax
        out[self._k[keep]] = self._p[keep]
        return out


@dataclass(frozen=True)
class DegreeSample:
    """Degrees of sampled nodes in sampling order, with optional coverage."""

    degrees: tuple[int, ...]
    coverage: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if any(d < 0 for d in self.degrees):
            raise ValueError("negative degree in sample")
        if self.coverage is not None and not 0 < self.coverage <= 1:
            raise ValueError(f"coverage must be in (0, 1], got {self.coverage}")

    def __len__(self) -> int:
        return len(self.degrees)


def moments(dist: DegreeDistribution) -> tuple[float, float]:
    """Return ``(<k>, <k^2>)``."""
    k = dist.degrees.astype(float)
    p = dist.fractions
    return math.fsum(k * p), math.fsum(k * k * p)


def empirical_distribution(sample: DegreeSample | Sequence[int]) -> DegreeDistribution:
    degrees = sample.degrees if isinstance(sample, DegreeSample) else sample
    if len(degrees) == 0:
        raise ValueError("empty sample")
    n = len(degrees)
    counts = Counter(int(d) for d in degrees)
    return DegreeDistribution({k: c / n for k, c in counts.items()})


def tv_distance(a: DegreeDistribution, b: DegreeDistribution) -> float:
    """Total-variation distance (half the L1 distance)."""
    kmax = max(a.max_degree, b.max_degree)
    return 0.5 * float(np.abs(a.dense(kmax) - b.dense(kmax)).sum())


def average_distributions(dists: Sequence[DegreeDistribution]) -> DegreeDistribution:
    """Entry-wise arithmetic mean of several distributions."""
    if not dists:
        raise ValueError("nothing to average")
    kmax = max(d.max_degree for d in dists)
    acc = np.zeros(kmax + 1)
    for d in dists:
        acc += d.dense(kmax)
    acc /= len(dists)
    return DegreeDistribution({k: acc[k] for k in np.flatnonzero(acc)})


def log_binned(dist: DegreeDistribution, bin_ratio: float) -> list[tuple[float, float]]:
    """Average ``p_k`` over logarithmic bins ``[ratio^b, ratio^(b+1))``.

    Degrees missing from ``dist`` but lying between its smallest and largest
    positive degree count as zeros in the bin average. Degree 0 cannot be
    placed on a log axis and is skipped. Bin centers are geometric means of
    the bin edges.
    """
    if not bin_ratio > 1:
        raise ValueError(f"bin_ratio must be > 1, got {bin_ratio}")
    positive = [(k, p) for k, p in dist.items() if k >= 1]
    if not positive:
        return []
    kmin, kmax = positive[0][0], positive[-1][0]
    dense = dist.dense(kmax)
    log_r = math.log(bin_ratio)
    out = []
    b = math.floor(math.log(kmin) / log_r + 1e-12)
    while True:
        lo, hi = bin_ratio**b, bin_ratio ** (b + 1)
        if lo > kmax:
            break
        ks = [k for k in range(max(kmin, math.ceil(lo - 1e-9)), kmax + 1) if k < hi - 1e-9]
        if ks:
            out.append((math.sqrt(lo * hi), float(np.mean(dense[ks]))))
        b += 1
    return out


def read_distribution(stream: IO[str]) -> DegreeDistribution:
    """Parse the ``k value`` text format. Lines starting with '#' are ignored."""
    weights: dict[int, float] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'k value', got {raw.rstrip()!r}")
        try:
            k = int(parts[0])
            v = float(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if k < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative degree or value")
        weights[k] = weights.get(k, 0.0) + v
    return DegreeDistribution(weights)


def write_distribution(dist: DegreeDistribution, stream: IO[str]) -> None:
    for k, p in dist.items():
        stream.write(f"{k} {p:.17g}\n")
