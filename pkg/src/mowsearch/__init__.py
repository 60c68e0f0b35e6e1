"""Coverage search planning: quota mowing tours and expected-detection-time routes."""

from .discretize import (DualGraph, PixelGrid, build_dual_graph, build_hex_grid,
                         build_square_grid)
from .geometry import (Point, PolygonalRegion, clip_pixel, contains_point,
                       region_area, sample_uniform)
from .heuristics import (Route, exponential_tree_heuristic, min_latency_heuristic)
from .quota import (QuotaTour, ScaledRewards, max_quota_within_budget, quota_tour,
                    scale_rewards)
from .schedule import (CoverageProfile, SearchPlan, axis_swap, coverage_profile,
                       expected_detection_time, exponential_plan)
from .sim import Cutter, SimulationReport, first_detection_time, monte_carlo
from .tours import (Metric, Path, Tour, double_tree_tour, greedy_reward_tree,
                    shortest_path_metric, tsp_path, tsp_tour)

__version__ = "0.1.0"

__all__ = [
    "Point", "PolygonalRegion", "region_area", "clip_pixel", "contains_point",
    "sample_uniform", "PixelGrid", "DualGraph", "build_square_grid",
    "build_hex_grid", "build_dual_graph", "Metric", "Tour", "Path",
    "shortest_path_metric", "greedy_reward_tree", "double_tree_tour",
    "tsp_tour", "tsp_path", "ScaledRewards", "QuotaTour", "scale_rewards",
    "quota_tour", "max_quota_within_budget", "CoverageProfile", "SearchPlan",
    "coverage_profile", "expected_detection_time", "axis_swap",
    "exponential_plan", "Route", "exponential_tree_heuristic",
    "min_latency_heuristic", "Cutter", "SimulationReport",
    "first_detection_time", "monte_carlo",
]
