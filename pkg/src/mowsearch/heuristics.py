"""Search routes over the dual graph and two planning heuristics.

exponential_tree_heuristic grows reward-greedy trees of doubling size and
tours the newly adopted nodes each round, returning to the start between
rounds.  min_latency_heuristic computes one global tour and re-optimizes
geometrically shrinking prefix blocks as open paths.  Both return a Route
visiting every pixel with positive reward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .discretize import DualGraph, PixelGrid
from .tours import Metric, shortest_path_metric, _greedy_growth, tsp_tour, tsp_path

DEFAULT_EPSILON = 0.01


@dataclass
class Route:
    """Walk on the dual graph: consecutive waypoints are graph-adjacent.

    cumulative_length[k] is the arc length at waypoint k; legs holds the
    waypoint offset where each planning round begins.
    """

    waypoints: list[int]
    cumulative_length: list[float]
    legs: list[int] = field(default_factory=lambda: [0])

    @property
    def length(self) -> float:
        return self.cumulative_length[-1] if self.cumulative_length else 0.0


def realize_route(stops: list[int], metric: Metric, grid: PixelGrid,
                  leg_breaks: list[int] | None = None) -> Route:
    """Expand a stop sequence into a full graph walk with arc lengths.

    leg_breaks lists indices into stops where a new leg starts; they are
    converted to waypoint offsets in the realized walk.
    """
    if not stops:
        raise ValueError("empty stop sequence")
    waypoints = [stops[0]]
    cumulative = [0.0]
    legs = [0]
    breaks = set(leg_breaks or ())
    centers = grid.centers
    for k in range(1, len(stops)):
        if k in breaks:
            legs.append(len(waypoints) - 1)
        walk = metric.realize(stops[k - 1], stops[k])
        for v in walk[1:]:
            px, py = centers[waypoints[-1]]
            qx, qy = centers[v]
            waypoints.append(v)
            cumulative.append(cumulative[-1] + math.hypot(qx - px, qy - py))
    return Route(waypoints=waypoints, cumulative_length=cumulative, legs=legs)


def _closed_stops(tour_nodes: list[int]) -> list[int]:
    # A closed tour's stop sequence ends back at its first node.
    if len(tour_nodes) == 1:
        return list(tour_nodes)
    return list(tour_nodes) + [tour_nodes[0]]


def exponential_tree_heuristic(graph: DualGraph, grid: PixelGrid, start: int,
                               cap_mode: str = "nodes",
                               metric: Metric | None = None) -> Route:
    """Doubling-budget coverage route.

    Round j grows the greedy reward tree to min(2**j, N) nodes
    (cap_mode "nodes") or to tree cost at most 2**j (cap_mode "cost"),
    then tours the tree nodes not yet visited and returns to the start.
    Stops once every positive-reward pixel has been visited.
    """
    if cap_mode not in ("nodes", "cost"):
        raise ValueError(f"unknown cap_mode {cap_mode!r}")
    if metric is None:
        metric = shortest_path_metric(graph)
    order, _, cum_cost, _ = _greedy_growth(graph, grid.rewards, start)
    positive = {v for v in range(grid.node_count) if grid.rewards[v] > 0.0}

    stops = [start]
    breaks: list[int] = []
    visited: set[int] = {start}
    j = 0
    while not positive <= visited:
        if cap_mode == "nodes":
            k = min(2 ** j, len(order))
        else:
            cap = float(2 ** j)
            k = 1
            while k < len(order) and cum_cost[k] <= cap:
                k += 1
        tree_nodes = order[:k]
        fresh = [v for v in tree_nodes if v == start or v not in visited]
        if len(fresh) > 1:
            tour = tsp_tour(fresh, metric, start)
            if len(stops) > 1:
                breaks.append(len(stops))
            stops.extend(_closed_stops(tour.nodes)[1:])
        visited.update(tree_nodes)
        j += 1
        if j > 64:
            raise RuntimeError("coverage did not complete; is the graph connected?")
    return realize_route(stops, metric, grid, breaks)


def _block_sizes(n: int, epsilon: float) -> list[int]:
    """Geometric prefix block sizes; empty when the first block rounds to zero."""
    sizes = []
    k = 1
    used = 0
    while used < n:
        b = math.floor(epsilon * n / (1.0 + epsilon) ** k)
        if b == 0:
            break
        b = min(b, n - used)
        sizes.append(b)
        used += b
        k += 1
    return sizes


def min_latency_heuristic(graph: DualGraph, grid: PixelGrid, start: int,
                          epsilon: float = DEFAULT_EPSILON,
                          metric: Metric | None = None) -> Route:
    """Global-tour route with geometrically shrinking re-optimized prefixes.

    The visiting order of one TSP tour over all pixels is cut into blocks
    of sizes floor(eps*N/(1+eps)**k); each block is replaced by an open
    TSP path anchored at the end of the previous block.  When the first
    block size is zero the plain tour order is followed.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if metric is None:
        metric = shortest_path_metric(graph)
    n = grid.node_count
    if n == 1:
        return Route(waypoints=[start], cumulative_length=[0.0])

    order = tsp_tour(sorted(range(n)), metric, start).nodes
    sizes = _block_sizes(n, epsilon)
    if not sizes:
        return realize_route(order, metric, grid)

    if sum(sizes) < n:
        sizes.append(n - sum(sizes))  # remainder forms the last block
    stops: list[int] = []
    at = 0
    anchor = start
    for b in sizes:
        block = order[at:at + b]
        at += b
        if stops:
            path = tsp_path(sorted(set(block) | {anchor}), metric, anchor)
            stops.extend(path.nodes[1:])
        else:
            path = tsp_path(block, metric, start)  # first block contains start
            stops.extend(path.nodes)
        anchor = path.nodes[-1]
    return realize_route(stops, metric, grid)


def route_to_json(route: Route) -> dict:
    return {
        "waypoints": list(route.waypoints),
        "cumulative_length": list(route.cumulative_length),
        "legs": list(route.legs),
    }


def route_from_json(data: dict) -> Route:
    if not isinstance(data, dict) or "waypoints" not in data:
        raise ValueError("route file must carry a waypoints list")
    wp = [int(v) for v in data["waypoints"]]
    cum = [float(v) for v in data.get("cumulative_length", [])]
    legs = [int(v) for v in data.get("legs", [0])]
    if not cum:
        raise ValueError("route file must carry cumulative_length")
    if len(cum) != len(wp):
        raise ValueError("waypoints and cumulative_length lengths differ")
    return Route(waypoints=wp, cumulative_length=cum, legs=legs)
