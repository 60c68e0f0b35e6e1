"""Tours and paths on the dual graph: metric closure, reward trees, TSP.

The metric closure is computed once per graph (breadth-first layering for
uniform edge lengths, Dijkstra otherwise) and every tour construction
works in that metric, realizing legs back onto graph walks on demand.
All tie-breaks are by lowest node index so results are reproducible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra, shortest_path

from .discretize import DualGraph

IMPROVE_EPS = 1e-9


@dataclass
class Tour:
    """Closed visiting order; the edge back to nodes[0] is implicit."""

    nodes: list[int]
    length: float


@dataclass
class Path:
    """Open visiting order starting at nodes[0]."""

    nodes: list[int]
    length: float


class Metric:
    """All-pairs shortest-path distances with walk reconstruction."""

    def __init__(self, dist: np.ndarray, pred: np.ndarray):
        self.dist = dist
        self._pred = pred

    def d(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def realize(self, i: int, j: int) -> list[int]:
        """Shortest graph walk from i to j, endpoints included."""
        if i == j:
            return [i]
        if not math.isfinite(self.dist[i, j]):
            raise ValueError(f"nodes {i} and {j} are disconnected")
        walk = [j]
        v = j
        while v != i:
            v = int(self._pred[i, v])
            walk.append(v)
        walk.reverse()
        return walk

    def cycle_length(self, nodes: list[int]) -> float:
        total = 0.0
        for k in range(len(nodes)):
            total += self.dist[nodes[k], nodes[(k + 1) % len(nodes)]]
        return float(total)

    def path_length(self, nodes: list[int]) -> float:
        total = 0.0
        for k in range(len(nodes) - 1):
            total += self.dist[nodes[k], nodes[k + 1]]
        return float(total)


def shortest_path_metric(graph: DualGraph) -> Metric:
    """Metric closure of the dual graph; raises if the graph is disconnected."""
    n = graph.node_count
    if n == 0:
        raise ValueError("empty graph")
    rows, cols, vals = [], [], []
    for a, b, w in graph.edges:
        rows.append(a)
        cols.append(b)
        vals.append(w)
    m = csr_matrix((vals, (rows, cols)), shape=(n, n))

    lengths = {w for _, _, w in graph.edges}
    if len(lengths) <= 1:
        # Uniform edge lengths: breadth-first layering, scaled afterwards.
        dist, pred = shortest_path(m, directed=False, unweighted=True,
                                   return_predecessors=True)
        if lengths:
            dist = dist * next(iter(lengths))
    else:
        dist, pred = dijkstra(m, directed=False, return_predecessors=True)
    if n > 1 and not np.isfinite(dist).all():
        raise ValueError("graph is disconnected")
    return Metric(dist, pred)


@dataclass
class GreedyTree:
    """Reward-greedy tree: order[k] was added k-th, parent[order[k]] precedes it."""

    order: list[int]
    parent: dict[int, int]
    cost: float
    reward: float
    revisits: frozenset[int]  # members that were already visited by the caller


def _greedy_growth(graph: DualGraph, rewards, start: int):
    """Full greedy growth from start: at each step adopt the frontier node of
    highest reward (ties: lowest index), attached by its cheapest tree edge.

    Returns (order, parents, cum_cost, cum_reward) over all reachable nodes;
    prefixes of this sequence are exactly the capped greedy trees.
    """
    order = [start]
    parents = [-1]
    cum_cost = [0.0]
    cum_reward = [float(rewards[start])]
    in_tree = {start}
    heap: list[tuple[float, int]] = []
    for nbr, _ in graph.neighbors(start):
        heapq.heappush(heap, (-float(rewards[nbr]), nbr))
    while heap:
        negr, v = heapq.heappop(heap)
        if v in in_tree:
            continue
        best = None
        for nbr, w in graph.neighbors(v):
            if nbr in in_tree and (best is None or (w, nbr) < best):
                best = (w, nbr)
        in_tree.add(v)
        order.append(v)
        parents.append(best[1])
        cum_cost.append(cum_cost[-1] + best[0])
        cum_reward.append(cum_reward[-1] - negr)
        for nbr, _ in graph.neighbors(v):
            if nbr not in in_tree:
                heapq.heappush(heap, (-float(rewards[nbr]), nbr))
    return order, parents, cum_cost, cum_reward


def greedy_reward_tree(graph: DualGraph, rewards, start: int,
                       node_cap: int | None = None,
                       exclude: frozenset[int] | set[int] = frozenset()) -> GreedyTree:
    """Greedy tree truncated to node_cap nodes (None or large caps: all reachable).

    Nodes listed in exclude still join the tree (they may be needed for
    connectivity) but are reported in `revisits` so callers can skip
    touring them again.  The start node is never a revisit.
    """
    order, parents, cum_cost, cum_reward = _greedy_growth(graph, rewards, start)
    k = len(order) if node_cap is None else max(1, min(node_cap, len(order)))
    return _tree_prefix(order, parents, cum_cost, cum_reward, k, exclude, start)


def _tree_prefix(order, parents, cum_cost, cum_reward, k, exclude, start) -> GreedyTree:
    nodes = order[:k]
    parent = {order[i]: parents[i] for i in range(1, k)}
    revisits = frozenset(v for v in nodes if v in exclude and v != start)
    return GreedyTree(order=nodes, parent=parent, cost=cum_cost[k - 1],
                      reward=cum_reward[k - 1], revisits=revisits)


def double_tree_tour(tree: GreedyTree, metric: Metric) -> Tour:
    """Closed tour from a depth-first preorder of the tree.

    Shortcutting the doubled tree walk over the metric keeps the length
    at most twice the tree cost.
    """
    children: dict[int, list[int]] = {v: [] for v in tree.order}
    for v, p in tree.parent.items():
        children[p].append(v)
    for lst in children.values():
        lst.sort()
    root = tree.order[0]
    preorder = []
    stack = [root]
    while stack:
        v = stack.pop()
        preorder.append(v)
        stack.extend(reversed(children[v]))
    return Tour(nodes=preorder, length=metric.cycle_length(preorder))


def _nearest_neighbor(nodes: list[int], metric: Metric, start: int) -> list[int]:
    remaining = sorted(v for v in nodes if v != start)
    order = [start]
    cur = start
    while remaining:
        row = metric.dist[cur, remaining]
        k = int(np.argmin(row))  # first occurrence = lowest index on ties
        cur = remaining.pop(k)
        order.append(cur)
    return order


def _two_opt_cycle(order: list[int], metric: Metric) -> list[int]:
    t = np.array(order, dtype=np.intp)
    n = len(t)
    D = metric.dist
    if n < 4:
        return [int(v) for v in t]
    improved = True
    while improved:
        improved = False
        for i in range(1, n - 1):
            a, b = t[i - 1], t[i]
            js = np.arange(i + 1, n)
            c = t[js]
            d = t[(js + 1) % n]
            delta = D[a, c] + D[b, d] - D[a, b] - D[c, d]
            k = int(np.argmin(delta))
            if delta[k] < -IMPROVE_EPS:
                j = int(js[k])
                t[i:j + 1] = t[i:j + 1][::-1]
                improved = True
    return [int(v) for v in t]


def _two_opt_path(order: list[int], metric: Metric) -> list[int]:
    # Reversing t[i..j] keeps t[0] fixed; when j is the last node the
    # path end is free and the tail term drops out.
    t = np.array(order, dtype=np.intp)
    n = len(t)
    D = metric.dist
    if n < 3:
        return [int(v) for v in t]
    improved = True
    while improved:
        improved = False
        for i in range(1, n - 1):
            a, b = t[i - 1], t[i]
            best_j, best_delta = -1, -IMPROVE_EPS
            if i + 1 <= n - 2:
                js = np.arange(i + 1, n - 1)
                c = t[js]
                d = t[js + 1]
                delta = D[a, c] + D[b, d] - D[a, b] - D[c, d]
                k = int(np.argmin(delta))
                if delta[k] < best_delta:
                    best_j, best_delta = int(js[k]), float(delta[k])
            tail = float(D[a, t[n - 1]] - D[a, b])  # j = n - 1
            if tail < best_delta:
                best_j = n - 1
            if best_j >= 0:
                t[i:best_j + 1] = t[i:best_j + 1][::-1]
                improved = True
    return [int(v) for v in t]


def tsp_tour(nodes: list[int], metric: Metric, start: int) -> Tour:
    """Nearest-neighbor tour from start improved by 2-opt to a local optimum."""
    if start not in nodes:
        raise ValueError("start must be one of the nodes")
    order = _two_opt_cycle(_nearest_neighbor(list(nodes), metric, start), metric)
    return Tour(nodes=order, length=metric.cycle_length(order))


def tsp_path(nodes: list[int], metric: Metric, start: int) -> Path:
    """Open nearest-neighbor path from start improved by start-preserving 2-opt."""
    if start not in nodes:
        raise ValueError("start must be one of the nodes")
    order = _two_opt_path(_nearest_neighbor(list(nodes), metric, start), metric)
    return Path(nodes=order, length=metric.path_length(order))
