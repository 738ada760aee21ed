"""Degree-bias laboratory for graph sampling on configuration-model graphs."""

from .degree import DegreeDistribution, DegreeSample, empirical_distribution, moments, tv_distance
from .estimators import correct_mhrw, correct_rw, correct_traversal, rw_mean_estimate
from .generator import DegreeSequence, generate, random_graph, realize_sequence, rewire_to_assortativity
from .graph import AssortativityUndefined, Multigraph, assortativity, load_edge_list, save_edge_list
from .harness import ExperimentConfig, run_experiment
from .samplers import TraversalPolicy, mhrw, on_the_fly_sample, random_walk, rds, traverse
from .theory import NonConvergence, bias_curve, coverage_of_t, t_of_coverage, traversal_expected_mean

__all__ = [
    "AssortativityUndefined", "DegreeDistribution", "DegreeSample", "DegreeSequence", "ExperimentConfig",
    "Multigraph", "NonConvergence", "TraversalPolicy", "assortativity", "bias_curve", "correct_mhrw",
    "correct_rw", "correct_traversal", "coverage_of_t", "empirical_distribution", "generate",
    "load_edge_list", "mhrw", "moments", "on_the_fly_sample", "random_graph", "random_walk", "rds",
    "realize_sequence", "rewire_to_assortativity", "rw_mean_estimate", "save_edge_list", "t_of_coverage",
    "traversal_expected_mean", "traverse", "tv_distance", "run_experiment",
]
