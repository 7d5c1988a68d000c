"""Shared-bandwidth pitch KDEs compared with Wasserstein distances."""

from ._core import (
    DensityGrid,
    DensityModel,
    DiscreteDistribution,
    GridSpec,
    PitchkdeError,
    cv_score,
    default_candidate_grid,
    default_render_grid,
    default_transport_grid,
    difference_grid,
    discretize,
    generate_season_csv,
    grid_from_json,
    ground_cost,
    kernel_value,
    pool_geometric_mean,
    render_diff,
    render_heatmap,
    run_analysis,
    select_bandwidth,
    wasserstein_exact,
    wasserstein_sinkhorn,
)

__all__ = [
    "DensityGrid",
    "DensityModel",
    "DiscreteDistribution",
    "GridSpec",
    "PitchkdeError",
    "cv_score",
    "default_candidate_grid",
    "default_render_grid",
    "default_transport_grid",
    "difference_grid",
    "discretize",
    "generate_season_csv",
    "grid_from_json",
    "ground_cost",
    "kernel_value",
    "pool_geometric_mean",
    "render_diff",
    "render_heatmap",
    "run_analysis",
    "select_bandwidth",
    "wasserstein_exact",
    "wasserstein_sinkhorn",
]
