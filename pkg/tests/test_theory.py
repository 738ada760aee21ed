import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gslab.degree import DegreeDistribution, average_distributions, empirical_distribution, tv_distance
from gslab.generator import realize_sequence
from gslab.samplers import weighted_wor_sample
from gslab.theory import (
    NonConvergence,
    bias_curve,
    bisect_increasing,
    coverage_of_t,
    discovery_prob,
    mhrw_expected_mean,
    mhrw_expected_qk,
    rw_expected_mean,
    rw_expected_qk,
    t_of_coverage,
    traversal_expected_mean,
    traversal_expected_qk,
)

TWO_POINT = DegreeDistribution({1: 0.5, 3: 0.5})

dists = st.dictionaries(st.integers(0, 400), st.floats(0.001, 1.0), min_size=1).filter(
    lambda d: any(k > 0 for k in d)
)


def test_coverage_examples():
    assert coverage_of_t(TWO_POINT, 0.5) == pytest.approx(0.6875, abs=1e-15)
    assert coverage_of_t(TWO_POINT, 0.0) == 0.0
    assert coverage_of_t(TWO_POINT, 1.0) == 1.0
    with pytest.raises(ValueError):
        coverage_of_t(TWO_POINT, 1.2)


def test_t_of_coverage_examples():
    assert t_of_coverage(TWO_POINT, 0.6875) == pytest.approx(0.5, abs=1e-12)
    assert t_of_coverage(TWO_POINT, 0.0) == 0.0
    assert t_of_coverage(DegreeDistribution({2: 1.0}), 0.75) == pytest.approx(0.5, abs=1e-12)
    with_iso = DegreeDistribution({0: 0.2, 2: 0.8})
    assert t_of_coverage(with_iso, 0.8) == 1.0
    with pytest.raises(ValueError, match="coverage unreachable: isolated nodes"):
        t_of_coverage(with_iso, 0.9)


def test_discovery_prob_accurate_at_extremes():
    assert discovery_prob(np.array([1]), 1e-14)[0] == pytest.approx(1e-14, rel=1e-9)
    big = discovery_prob(np.arange(1, 5000), 0.01)
    assert (np.diff(big) >= 0).all() and big[-1] == 1.0


@settings(max_examples=40, deadline=None)
@given(dists, st.floats(0.0, 1.0))
def test_round_trip(weights, u):
    d = DegreeDistribution(weights)
    f = u * (1 - d[0])
    assert abs(coverage_of_t(d, t_of_coverage(d, f)) - f) <= 1e-12


def test_expected_qk_examples():
    q = traversal_expected_qk(TWO_POINT, 0.6875)
    assert q[1] == pytest.approx(4 / 11, abs=1e-12) and q[3] == pytest.approx(7 / 11, abs=1e-12)
    assert traversal_expected_qk(TWO_POINT, 1.0) == TWO_POINT
    assert traversal_expected_qk(TWO_POINT, 0.0).as_dict() == {1: 0.25, 3: 0.75}
    assert traversal_expected_mean(TWO_POINT, 0.0) == pytest.approx(2.5)
    assert traversal_expected_mean(TWO_POINT, 0.6875) == pytest.approx(25 / 11, abs=1e-12)
    assert traversal_expected_mean(TWO_POINT, 1.0) == 2.0


@settings(max_examples=40, deadline=None)
@given(dists)
def test_small_coverage_limit_is_the_walk(weights):
    d = DegreeDistribution(weights)
    q0, qs = rw_expected_qk(d), traversal_expected_qk(d, 1e-13)
    assert tv_distance(q0, qs) < 1e-9


@settings(max_examples=30, deadline=None)
@given(dists)
def test_mean_non_increasing_in_coverage(weights):
    d = DegreeDistribution(weights)
    fmax = 1 - d[0]
    means = [traversal_expected_mean(d, f) for f in np.linspace(1e-4, fmax, 60)]
    assert all(b <= a + 1e-12 * a for a, b in zip(means, means[1:]))
    if len([k for k in weights if k > 0]) >= 2:
        assert means[-1] < means[0]


def test_walk_predictions():
    assert rw_expected_qk(TWO_POINT).as_dict() == {1: 0.25, 3: 0.75}
    assert rw_expected_mean(TWO_POINT) == 2.5
    assert rw_expected_mean(DegreeDistribution({6: 1.0})) == 6.0
    assert rw_expected_qk(DegreeDistribution({1: 1.0})).as_dict() == {1: 1.0}
    assert mhrw_expected_qk(TWO_POINT) == TWO_POINT and mhrw_expected_mean(TWO_POINT) == 2.0
    assert mhrw_expected_qk(DegreeDistribution({7: 1.0})).as_dict() == {7: 1.0}
    with pytest.raises(ValueError):
        rw_expected_mean(DegreeDistribution({0: 1.0}))


def test_bias_curve_invariants_and_csv():
    curve = bias_curve(TWO_POINT, np.linspace(0.001, 1.0, 50))
    ts = [p.t for p in curve.grid]
    means = [p.mean_observed for p in curve.grid]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    assert all(b <= a for a, b in zip(means, means[1:]))
    assert curve.grid[-1].q == TWO_POINT and curve.grid[-1].mean_observed == 2.0
    buf = io.StringIO()
    bias_curve(TWO_POINT, [0.6875]).write_csv(buf, per_degree=True)
    header, row = buf.getvalue().splitlines()
    assert header == "f,t,mean_observed,q_1,q_3"
    assert [float(x) for x in row.split(",")] == pytest.approx([0.6875, 0.5, 25 / 11, 4 / 11, 7 / 11])
    with pytest.raises(ValueError):
        bias_curve(TWO_POINT, [0.5, 0.2])


def test_bisection_reports_nonconvergence():
    with pytest.raises(NonConvergence) as info:
        bisect_increasing(lambda x: 0.0 if x < 0.5 else 1.0, 0.5, 0.0, 1.0, 1e-12)
    assert info.value.residual == pytest.approx(0.5)


def test_prediction_matches_weighted_oracle():
    dist = DegreeDistribution({k: k**-2.5 for k in range(1, 60)})
    rng = np.random.default_rng(2024)
    n = 10_000
    for f in (0.05, 0.3):
        m = math.ceil(f * n)
        qs = []
        for _ in range(200):
            seq = realize_sequence(dist, n, rng)
            qs.append(empirical_distribution(weighted_wor_sample(seq, m, rng).degrees.tolist()))
        realized = empirical_distribution(seq.degrees)
        assert tv_distance(average_distributions(qs), traversal_expected_qk(realized, f)) < 0.01
