"""Quota tours: shortest-effort closed tours collecting a target reward.

The planner grows a reward-greedy tree from the start until the tree
holds the requested quota, doubles it into a closed tour, and polishes
the visiting order with 2-opt.  Rewards are scaled to integers first so
quotas can be binary-searched exactly.  Every tour records the reward it
actually collected (realized walks sweep pixels they merely pass
through) and a measured slack factor against a radius lower bound, so
downstream guarantees can be stated in terms of observed quality rather
than an assumed approximation constant.

Grid-restricted tours cost at most a constant factor over free-roaming
ones; the factors for the three motion models are kept here as
documentation constants.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .discretize import DualGraph, PixelGrid
from .tours import Metric, Tour, shortest_path_metric, _greedy_growth, \
    _tree_prefix, double_tree_tour, _two_opt_cycle

# Worst-case length factors of grid-restricted tours per motion model.
GRID_FACTOR_RECTILINEAR = 3.0
GRID_FACTOR_ARBITRARY = 6.0 / math.sqrt(2.0 + math.sqrt(2.0))
GRID_FACTOR_TRIANGULAR = 2.0 * math.sqrt(3.0)

# Default cap on decimal digits kept when scaling rewards to integers.
DEFAULT_DIGIT_CAP = 12

QUOTA_TOL = 1e-9


class InfeasibleQuota(ValueError):
    """Requested quota exceeds the total reward of the grid."""


@dataclass(frozen=True)
class ScaledRewards:
    """Integer rewards scaled[i] = round(rewards[i] * 10**digits)."""

    digits: int
    multiplier: int
    scaled: tuple[int, ...]
    scaled_total: int

    def scale_quota(self, quota: float) -> int:
        return round(quota * self.multiplier)


def _fraction_digits(value: float, cap: int) -> int:
    """Decimal digits needed for the fraction part, saturating at cap."""
    for d in range(cap + 1):
        scaled = value * 10 ** d
        if abs(scaled - round(scaled)) <= 1e-9 * max(1.0, abs(scaled)):
            return d
    return cap


def scale_rewards(grid: PixelGrid, digit_cap: int = DEFAULT_DIGIT_CAP) -> ScaledRewards:
    """Scale pixel rewards to integers by the smallest sufficient power of ten."""
    digits = 0
    for r in grid.rewards:
        digits = max(digits, _fraction_digits(r, digit_cap))
        if digits == digit_cap:
            break
    mult = 10 ** digits
    scaled = tuple(round(r * mult) for r in grid.rewards)
    return ScaledRewards(digits=digits, multiplier=mult, scaled=scaled,
                         scaled_total=sum(scaled))


@dataclass
class QuotaTour:
    """A closed tour plus its collection accounting."""

    tour: Tour
    collected: float        # reward of every pixel the realized walk visits
    collected_scaled: int
    measured_c: float       # tour length over the 2 * radius lower bound


class QuotaSolver:
    """Shared state for repeated quota queries on one grid.

    The greedy growth order, the metric, and tours already built for a
    given tree prefix are cached; the budget query also reuses every
    probe seen so far so its answer is monotone in the budget.
    """

    def __init__(self, graph: DualGraph, grid: PixelGrid, start: int,
                 metric: Metric | None = None,
                 scaled: ScaledRewards | None = None):
        self.graph = graph
        self.grid = grid
        self.start = start
        self.metric = metric if metric is not None else shortest_path_metric(graph)
        self.scaled = scaled if scaled is not None else scale_rewards(grid)
        self._growth = _greedy_growth(graph, grid.rewards, start)
        self._tours: dict[int, QuotaTour] = {}
        self._probes: list[QuotaTour] = []
        self._radius_order = None

    def _prefix_for(self, quota: float) -> int:
        order, _, _, cum_reward = self._growth
        if quota > cum_reward[-1] + QUOTA_TOL:
            raise InfeasibleQuota(
                f"quota {quota} exceeds reachable reward {cum_reward[-1]}")
        k = bisect_left(cum_reward, quota - QUOTA_TOL)
        return min(k + 1, len(order))

    def _radius_bound(self, quota: float) -> float:
        """Smallest radius around the start holding the quota; any tour
        collecting it must travel at least twice that far."""
        if self._radius_order is None:
            nodes = sorted(range(self.grid.node_count),
                           key=lambda v: (self.metric.d(self.start, v), v))
            dists = [self.metric.d(self.start, v) for v in nodes]
            cum = []
            total = 0.0
            for v in nodes:
                total += self.grid.rewards[v]
                cum.append(total)
            self._radius_order = (dists, cum)
        dists, cum = self._radius_order
        k = bisect_left(cum, quota - QUOTA_TOL)
        return dists[min(k, len(dists) - 1)]

    def quota_tour(self, quota: float) -> QuotaTour:
        if quota < -QUOTA_TOL:
            raise ValueError("quota must be nonnegative")
        order, parents, cum_cost, cum_reward = self._growth
        k = self._prefix_for(quota)
        hit = self._tours.get(k)
        if hit is not None:
            return hit

        tree = _tree_prefix(order, parents, cum_cost, cum_reward, k,
                            frozenset(), self.start)
        doubled = double_tree_tour(tree, self.metric)
        nodes = _two_opt_cycle(doubled.nodes, self.metric)
        length = self.metric.cycle_length(nodes)

        visited = set()
        for i in range(len(nodes)):
            a, b = nodes[i], nodes[(i + 1) % len(nodes)]
            visited.update(self.metric.realize(a, b))
        collected = math.fsum(self.grid.rewards[v] for v in visited)
        collected_scaled = sum(self.scaled.scaled[v] for v in visited)

        rad = self._radius_bound(quota)
        c = length / (2.0 * rad) if rad > QUOTA_TOL and length > 0 else 1.0
        qt = QuotaTour(tour=Tour(nodes=nodes, length=length),
                       collected=collected, collected_scaled=collected_scaled,
                       measured_c=max(1.0, c))
        self._tours[k] = qt
        self._probes.append(qt)
        return qt

    def max_quota_within_budget(self, budget: float) -> tuple[int, QuotaTour]:
        """Largest scaled quota with a tour not longer than the budget.

        Binary search over integer scaled quotas; the best collected
        reward over all probes at or under the budget is returned, which
        makes the answer non-decreasing in the budget even though the
        underlying heuristic is not monotone.
        """
        if budget < 0:
            raise ValueError("budget must be nonnegative")
        best: QuotaTour | None = None
        for qt in self._probes:
            if qt.tour.length <= budget + QUOTA_TOL:
                if best is None or qt.collected_scaled > best.collected_scaled:
                    best = qt
        lo, hi = 0, self.scaled.scaled_total
        while lo < hi:
            mid = (lo + hi + 1) // 2
            qt = self.quota_tour(mid / self.scaled.multiplier)
            if qt.tour.length <= budget + QUOTA_TOL:
                lo = max(mid, qt.collected_scaled)
                if best is None or qt.collected_scaled > best.collected_scaled:
                    best = qt
            else:
                hi = mid - 1
        if best is None:
            best = self.quota_tour(0.0)
        return best.collected_scaled, best


def quota_tour(graph: DualGraph, grid: PixelGrid, start: int,
               quota: float) -> QuotaTour:
    """Closed tour from start collecting at least the quota (area units)."""
    return QuotaSolver(graph, grid, start).quota_tour(quota)


def max_quota_within_budget(graph: DualGraph, grid: PixelGrid, start: int,
                            budget: float) -> tuple[int, QuotaTour]:
    """Largest scaled quota collectable within the length budget, with its tour."""
    return QuotaSolver(graph, grid, start).max_quota_within_budget(budget)
