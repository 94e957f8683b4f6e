"""Spectral goodness-of-fit testing for stochastic block models."""

from .gof import (
    CenteredMatrix,
    KEstimate,
    TestResult,
    center_rescale,
    estimate_k,
    gof_test,
    gof_test_oracle,
    lss_statistic,
)
from .netgraph import Graph, degree_histogram, largest_connected_component, read_edge_list
from .sbm import SbmParams, build_edge_probabilities, estimate_block_matrix, sample_adjacency

__all__ = [
    "CenteredMatrix",
    "Graph",
    "KEstimate",
    "SbmParams",
    "TestResult",
    "build_edge_probabilities",
    "center_rescale",
    "degree_histogram",
    "estimate_block_matrix",
    "estimate_k",
    "gof_test",
    "gof_test_oracle",
    "largest_connected_component",
    "lss_statistic",
    "read_edge_list",
    "sample_adjacency",
]
