"""Exact solvers, threshold calculus and Monte Carlo harness for
random-graph embedding and common-subgraph phase transitions."""

from .edgegraph import (
    ComponentProfile,
    EdgeGraph,
    build_common_edge_graph,
    build_embedding_edge_graph,
    classify_components,
    pair_moment,
)
from .experiments import ExperimentConfig, SweepResult, estimate_probability, export, run_sweep
from .graphs import EdgeLaw, Graph, induced_subgraph, is_isomorphism, sample_gnp
from .isosearch import (
    CountResult,
    Injection,
    MaxCommonResult,
    PartialInjection,
    SearchOutcome,
    common_count,
    common_exists,
    embed_count,
    embed_exists,
    is_partial_isomorphism,
    max_common_size,
)
from .moments import (
    MomentBounds,
    RatioDecomposition,
    bound_H_drl,
    bound_H_r_ell,
    correlation_bound,
    count_H_dr,
    count_H_r,
    expected_common,
    expected_embeddings,
    falling_factorial,
    ratio_decomposition,
    s_bound,
    second_moment_exact,
    second_moment_ratio,
    t_dr,
)
from .thresholds import (
    ModelParams,
    ThresholdReport,
    common_thresholds,
    derive_params,
    embed_thresholds,
    in_admissible_region,
    m_star,
    m_star_approx,
    region_corner,
    threshold_report,
    w_eval,
)

__all__ = [
    "ComponentProfile",
    "CountResult",
    "EdgeGraph",
    "EdgeLaw",
    "ExperimentConfig",
    "Graph",
    "Injection",
    "MaxCommonResult",
    "ModelParams",
    "MomentBounds",
    "PartialInjection",
    "RatioDecomposition",
    "SearchOutcome",
    "SweepResult",
    "ThresholdReport",
    "bound_H_drl",
    "bound_H_r_ell",
    "build_common_edge_graph",
    "build_embedding_edge_graph",
    "classify_components",
    "common_count",
    "common_exists",
    "common_thresholds",
    "correlation_bound",
    "count_H_dr",
    "count_H_r",
    "derive_params",
    "embed_count",
    "embed_exists",
    "embed_thresholds",
    "estimate_probability",
    "expected_common",
    "expected_embeddings",
    "export",
    "falling_factorial",
    "in_admissible_region",
    "induced_subgraph",
    "is_isomorphism",
    "is_partial_isomorphism",
    "m_star",
    "m_star_approx",
    "max_common_size",
    "pair_moment",
    "ratio_decomposition",
    "region_corner",
    "run_sweep",
    "s_bound",
    "sample_gnp",
    "second_moment_exact",
    "second_moment_ratio",
    "t_dr",
    "threshold_report",
    "w_eval",
]

__version__ = "0.1.0"
