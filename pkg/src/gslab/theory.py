"""Expected degree bias of walks and traversals on configuration-model graphs.

A node of degree ``k`` is discovered by stub index ``t`` with probability
``1 - (1 - t)^k``; coverage ``f(t)`` averages that over ``p_k`` and is
inverted numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Callable, Sequence

import numpy as np

from .degree import DegreeDistribution, moments

MAX_BISECTIONS = 200


class NonConvergence(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3g})")
        self.residual = residual


def discovery_prob(k: np.ndarray, t: float) -> np.ndarray:
    """``1 - (1 - t)^k`` computed as ``-expm1(k log1p(-t))``.

    Stays accurate for tiny ``t`` (where the naive form cancels) and for
    large ``k`` (where the power underflows).
    """
    k = np.asarray(k, dtype=float)
    if t >= 1.0:
        return np.where(k > 0, 1.0, 0.0)
    return -np.expm1(k * math.log1p(-t))


def bisect_increasing(
    func: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    tol: float,
    maxiter: int = MAX_BISECTIONS,
) -> tuple[float, int]:
    """Solve ``func(x) = target`` for increasing ``func`` on ``[lo, hi]``.

    Halves until the bracket stops shrinking in floating point, so the
    relative precision is good even for roots near zero. Returns
    ``(x, iterations)``; raises :class:`NonConvergence` when the residual
    still exceeds ``tol`` after ``maxiter`` halvings.
    """
    best, best_res = lo, abs(func(lo) - target)
    it = 0
    for it in range(1, maxiter + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = func(mid) - target
        if abs(val) < best_res:
            best, best_res = mid, abs(val)
        if val == 0.0:
            break
        if val < 0:
            lo = mid
        else:
            hi = mid
    res_hi = abs(func(hi) - target)
    if res_hi < best_res:
        best, best_res = hi, res_hi
    if best_res > tol:
        raise NonConvergence("bisection did not converge", best_res)
    return best, it


def coverage_of_t(dist: DegreeDistribution, t: float) -> float:
    """Expected fraction of nodes discovered by stub index ``t``."""
    if not 0 <= t <= 1:
        raise ValueError(f"t must be in [0, 1], got {t}")
    if t == 0:
        return 0.0
    return float(dist.fractions @ discovery_prob(dist.degrees, t))


def max_coverage(dist: DegreeDistribution) -> float:
    return 1.0 - dist[0]


def _require_stubs(dist: DegreeDistribution) -> None:
    if dist.max_degree < 1:
        raise ValueError("distribution has no node with positive degree")


def t_of_coverage(dist: DegreeDistribution, f: float, tol: float = 1e-12) -> float:
    """Stub index at which expected coverage reaches ``f``."""
    _require_stubs(dist)
    f_max = max_coverage(dist)
    if f < 0:
        raise ValueError(f"coverage must be >= 0, got {f}")
    if f > f_max + 1e-15:
        raise ValueError(f"coverage unreachable: isolated nodes (f={f} > {f_max})")
    if f == 0:
        return 0.0
    if f >= f_max:
        return 1.0
    k = dist.degrees.astype(float)
    p = dist.fractions
    f_at_one = float(p[k > 0].sum())

    def coverage(t: float) -> float:
        # inlined coverage_of_t: this is the hot loop of every prediction
        return f_at_one if t >= 1.0 else float(p @ -np.expm1(k * math.log1p(-t)))

    t, _ = bisect_increasing(coverage, f, 0.0, 1.0, tol)
    return t


def rw_expected_qk(dist: DegreeDistribution) -> DegreeDistribution:
    """Random-walk stationary bias: ``q_k = k p_k / <k>``."""
    mean, _ = moments(dist)
    if mean <= 0:
        raise ValueError("all-zero-degree distribution")
    return DegreeDistribution.from_arrays(dist.degrees, dist.degrees * dist.fractions / mean)


def rw_expected_mean(dist: DegreeDistribution) -> float:
    mean, second = moments(dist)
    if mean <= 0:
        raise ValueError("all-zero-degree distribution")
    return second / mean


def mhrw_expected_qk(dist: DegreeDistribution) -> DegreeDistribution:
    return dist


def mhrw_expected_mean(dist: DegreeDistribution) -> float:
    return moments(dist)[0]


def traversal_qk_at_t(dist: DegreeDistribution, t: float) -> DegreeDistribution:
    if t == 0:
        return rw_expected_qk(dist)
    if t >= 1 and dist[0] == 0:
        return dist
    return DegreeDistribution.from_arrays(dist.degrees, dist.fractions * discovery_prob(dist.degrees, t))


def traversal_expected_qk(dist: DegreeDistribution, f: float) -> DegreeDistribution:
    """Expected observed distribution once a traversal covers fraction ``f``.

    ``f = 0`` returns the random-walk limit.
    """
    if f == 0:
        return rw_expected_qk(dist)
    return traversal_qk_at_t(dist, t_of_coverage(dist, f))


def traversal_expected_mean(dist: DegreeDistribution, f: float) -> float:
    q = traversal_expected_qk(dist, f)
    return moments(q)[0]


@dataclass(frozen=True)
class BiasPoint:
    f: float
    t: float
    q: DegreeDistribution
    mean_observed: float


@dataclass(frozen=True)
class BiasCurve:
    """Tabulated traversal prediction along an increasing coverage grid."""

    dist: DegreeDistribution
    grid: tuple[BiasPoint, ...]

    def write_csv(self, stream: IO[str], per_degree: bool = False) -> None:
        ks = self.dist.degrees.tolist()
        header = ["f", "t", "mean_observed"]
        if per_degree:
            header += [f"q_{k}" for k in ks]
        stream.write(",".join(header) + "\n")
        for pt in self.grid:
            row = [repr(pt.f), repr(pt.t), repr(pt.mean_observed)]
            if per_degree:
                row += [repr(pt.q[k]) for k in ks]
            stream.write(",".join(row) + "\n")


def bias_curve(dist: DegreeDistribution, f_grid: Sequence[float]) -> BiasCurve:
    fs = [float(f) for f in f_grid]
    if any(b <= a for a, b in zip(fs, fs[1:])):
        raise ValueError("f grid must be strictly increasing")
    if fs and (fs[0] <= 0 or fs[-1] > 1):
        raise ValueError("f grid values must lie in (0, 1]")
    points = []
    for f in fs:
        t = t_of_coverage(dist, f)
        q = traversal_qk_at_t(dist, t)
        points.append(BiasPoint(f, t, q, moments(q)[0]))
    return BiasCurve(dist, tuple(points))
