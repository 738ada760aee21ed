"""Bias correction: recover the true degree distribution from a biased sample."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .degree import DegreeDistribution, DegreeSample, moments
from .theory import MAX_BISECTIONS, NonConvergence, bisect_increasing, discovery_prob


def _no_zero_mass(q_hat: DegreeDistribution, what: str) -> None:
    if q_hat[0] > 0:
        raise ValueError(f"degree-0 in {what} sample")


def correct_rw(q_hat: DegreeDistribution) -> DegreeDistribution:
    """Undo the linear degree bias of a random walk: ``p_k ∝ q_k / k``."""
    _no_zero_mass(q_hat, "walk")
    return DegreeDistribution.from_arrays(q_hat.degrees, q_hat.fractions / q_hat.degrees)


def rw_mean_estimate(sample: DegreeSample) -> float:
    """Harmonic-mean estimate of ``<k>``: ``|S| / sum(1 / k_v)``."""
    degrees = sample.degrees
    if not degrees:
        raise ValueError("empty sample")
    if min(degrees) <= 0:
        raise ValueError("degree-0 in walk sample")
    # exact rational sum over distinct degrees, rounded once
    inverse = sum((Fraction(c, k) for k, c in Counter(degrees).items()), Fraction(0))
    return float(len(degrees) / inverse)


def correct_mhrw(q_hat: DegreeDistribution) -> DegreeDistribution:
    return q_hat


def mhrw_mean_estimate(q_hat: DegreeDistribution) -> float:
    return moments(q_hat)[0]


@dataclass(frozen=True)
class TraversalCorrection:
    p_hat: DegreeDistribution
    t_star: float
    iterations: int

    def __iter__(self):
        return iter((self.p_hat, self.t_star, self.iterations))

    @property
    def mean(self) -> float:
        return moments(self.p_hat)[0]


def _reweight(q_hat: DegreeDistribution, t: float) -> DegreeDistribution:
    return DegreeDistribution.from_arrays(
        q_hat.degrees, q_hat.fractions / discovery_prob(q_hat.degrees, t)
    )


def _implied_coverage(q_hat: DegreeDistribution, t: float) -> float:
    # f(p_hat(t), t) = sum_k p_hat_k d_k = 1 / sum_k (q_k / d_k); increasing since every d_k is
    if t <= 0:
        return 0.0
    return 1.0 / float(q_hat.fractions @ (1.0 / discovery_prob(q_hat.degrees, t)))


def correct_traversal(q_hat: DegreeDistribution, f_real: float, tol: float = 1e-9) -> TraversalCorrection:
    """Estimate ``p_k`` from a traversal sample that covered ``f_real`` of the nodes.

    Reweights ``q_k / (1 - (1 - t)^k)`` and bisects on ``t`` until the
    reweighted distribution's own coverage at ``t`` matches ``f_real``.
    """
    _no_zero_mass(q_hat, "traversal")
    if not 0 < f_real <= 1:
        raise ValueError(f"f_real must be in (0, 1], got {f_real}")
    if f_real == 1:
        return TraversalCorrection(q_hat, 1.0, 0)
    try:
        t, it = bisect_increasing(
            lambda t: _implied_coverage(q_hat, t), f_real, 0.0, 1.0, tol, MAX_BISECTIONS
        )
    except NonConvergence as exc:
        raise NonConvergence("traversal correction did not converge", exc.residual) from None
    return TraversalCorrection(_reweight(q_hat, t), t, it)


def traversal_mean_estimate(q_hat: DegreeDistribution, f_real: float) -> float:
    return correct_traversal(q_hat, f_real).mean
