"""Coverage profiles, expected detection time, and budget-doubling plans.

A route covers pixels at the arc length of its first arrival at their
centers.  For a target hidden uniformly in the region, the expected time
to detection is the reward-weighted mean first-arrival time, equivalently
the area under the uncovered-fraction curve; both views are provided and
must agree.  exponential_plan chains quota tours of doubling budgets into
a route whose expected detection time is compared against the best
possible within a measured slack factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .discretize import DualGraph, PixelGrid
from .heuristics import Route, realize_route
from .quota import QuotaSolver, QuotaTour
from .tours import Metric

COVERAGE_TOL = 1e-9


class IncompleteCoverage(ValueError):
    """The route never covers part of the region, so E[T] is infinite."""

    def __init__(self, uncovered_fraction: float):
        self.uncovered_fraction = uncovered_fraction
        super().__init__(
            f"route leaves {uncovered_fraction:.6g} of the area uncovered; "
            "expected detection time is infinite")


@dataclass
class CoverageProfile:
    """Step function of covered area over arc length.

    breakpoints[k] = (t, covered area once every arrival up to and
    including arc length t has happened); strictly increasing in both
    coordinates.  pixel_latency maps node -> first-arrival arc length,
    math.inf for pixels the route never reaches.
    """

    breakpoints: list[tuple[float, float]]
    total_area: float
    pixel_latency: dict[int, float]

    def covered_at(self, t: float) -> float:
        covered = 0.0
        for bt, c in self.breakpoints:
            if bt > t:
                break
            covered = c
        return covered


def coverage_profile(route: Route, grid: PixelGrid) -> CoverageProfile:
    """First-arrival latencies and the covered-area step curve of a route."""
    if not route.waypoints:
        raise ValueError("empty route")
    if route.waypoints[0] != grid.start_index:
        raise ValueError("route does not begin at the grid start pixel")
    if len(route.waypoints) != len(route.cumulative_length):
        raise ValueError("route waypoints and arc lengths disagree")

    latency: dict[int, float] = {}
    for node, t in zip(route.waypoints, route.cumulative_length):
        if node < 0 or node >= grid.node_count:
            raise ValueError(f"route references unknown pixel {node}")
        if node not in latency:
            latency[node] = t

    by_time: dict[float, float] = {}
    for node, t in latency.items():
        by_time[t] = by_time.get(t, 0.0) + grid.rewards[node]
    breakpoints = []
    covered = 0.0
    for t in sorted(by_time):
        covered += by_time[t]
        breakpoints.append((t, covered))

    full = dict.fromkeys(range(grid.node_count), math.inf)
    full.update(latency)
    return CoverageProfile(breakpoints=breakpoints,
                           total_area=grid.total_reward(),
                           pixel_latency=full)


def expected_detection_time(profile: CoverageProfile) -> float:
    """Reward-weighted mean first-arrival time over the region."""
    covered = profile.breakpoints[-1][1] if profile.breakpoints else 0.0
    shortfall = profile.total_area - covered
    if shortfall > COVERAGE_TOL * max(1.0, profile.total_area):
        raise IncompleteCoverage(shortfall / profile.total_area)
    terms = []
    prev = 0.0
    for t, c in profile.breakpoints:
        terms.append(t * (c - prev))
        prev = c
    return math.fsum(terms) / profile.total_area


def step_integral(profile: CoverageProfile) -> float:
    """Integral of the uncovered fraction over time, integrated stepwise.

    Independent of expected_detection_time in form; the two must agree to
    floating-point accuracy.  Returns math.inf for incomplete coverage.
    """
    covered = profile.breakpoints[-1][1] if profile.breakpoints else 0.0
    if profile.total_area - covered > COVERAGE_TOL * max(1.0, profile.total_area):
        return math.inf
    total = profile.total_area
    terms = []
    prev_t, prev_c = 0.0, 0.0
    for t, c in profile.breakpoints:
        terms.append((1.0 - prev_c / total) * (t - prev_t))
        prev_t, prev_c = t, c
    return math.fsum(terms)


def axis_swap(profile: CoverageProfile) -> list[tuple[float, float]]:
    """Uncovered-fraction axis flipped against time.

    Returns (p, t) pairs, p ascending: t is the earliest arc length at
    which the uncovered fraction is p or less.  The area under this
    flipped step function equals the area under the uncovered-fraction
    curve, which is the expected detection time.
    """
    total = profile.total_area
    pairs = []
    for t, c in profile.breakpoints:
        pairs.append((1.0 - c / total, t))
    pairs.reverse()
    if not pairs or pairs[-1][1] > 0.0:
        pairs.append((1.0, 0.0))  # nothing is covered before the start
    return pairs


def swapped_area(pairs: list[tuple[float, float]]) -> float:
    """Area under the flipped step curve by summation over its steps."""
    if not pairs:
        return 0.0
    if pairs[0][0] > COVERAGE_TOL:
        return math.inf  # the curve never reaches uncovered fraction ~0
    terms = []
    prev_p, prev_t = pairs[0]
    for p, t in pairs[1:]:
        terms.append(prev_t * (p - prev_p))
        prev_p, prev_t = p, t
    return math.fsum(terms)


@dataclass
class PlanLeg:
    budget: float
    quota: int  # scaled units actually collected by the leg's tour
    tour: QuotaTour


@dataclass
class SearchPlan:
    legs: list[PlanLeg]
    route: Route
    measured_c: float


def exponential_plan(graph: DualGraph, grid: PixelGrid, start: int,
                     metric: Metric | None = None) -> SearchPlan:
    """Chain quota tours of budgets 2, 4, 8, ... until full coverage.

    Each leg collects the largest quota reachable within its budget and
    returns to the start; legs that add no quota are still traversed.
    The plan records the largest measured slack of its quota tours.
    """
    solver = QuotaSolver(graph, grid, start, metric=metric)
    legs: list[PlanLeg] = []
    stops = [start]
    breaks: list[int] = []
    for j in range(1, 64):
        budget = float(2 ** j)
        quota, qt = solver.max_quota_within_budget(budget)
        legs.append(PlanLeg(budget=budget, quota=quota, tour=qt))
        if len(qt.tour.nodes) > 1:
            if len(stops) > 1:
                breaks.append(len(stops))
            stops.extend(qt.tour.nodes[1:] + [start])
        if quota >= solver.scaled.scaled_total:
            break
    else:
        raise RuntimeError("plan did not reach full coverage; "
                           "is the graph connected?")
    route = realize_route(stops, solver.metric, grid, breaks)
    plan = SearchPlan(legs=legs, route=route,
                      measured_c=max(l.tour.measured_c for l in legs))
    return plan


def plan_to_json(plan: SearchPlan, expected_time: float | None = None) -> dict:
    data = {
        "legs": [{"budget": l.budget, "quota": l.quota,
                  "tour": list(l.tour.tour.nodes)} for l in plan.legs],
        "route": list(plan.route.waypoints),
        "measured_c": plan.measured_c,
    }
    if expected_time is not None:
        data["expected_T"] = expected_time
    return data
