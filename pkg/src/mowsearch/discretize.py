"""Pixel grids over a region and the dual graph a robot travels on.

Square grids use unit pixels whose centers sit on the integer lattice
shifted so the start point is a pixel center.  Hexagonal grids (for a
circular sensor of radius 1) use flat-top hexagons of vertex-to-vertex
diameter 2 whose centers are spaced sqrt(3) apart, so every pixel fits
inside the sensor footprint parked on its center.

Pixels keep the area of their overlap with the region as a reward.
Pixels with zero overlap are dropped; if that disconnects the grid,
minimal chains of zero-reward bridge pixels are added back so every
pixel stays reachable (travel outside the region is allowed, it just
earns nothing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Point, PolygonalRegion, Vec2, clip_pixel

# Pixels whose overlap area is below this are treated as empty.
MIN_REWARD = 1e-12

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Offsets of the six vertices of a flat-top unit-circumradius hexagon.
_HEX_CORNERS = [(math.cos(k * math.pi / 3.0), math.sin(k * math.pi / 3.0))
                for k in range(6)]


@dataclass(frozen=True)
class PixelGrid:
    """Pixel centers with rewards; bridge pixels carry reward exactly 0."""

    kind: str  # "square" | "hexagonal"
    centers: tuple[Vec2, ...]
    rewards: tuple[float, ...]
    origin_shift: Point  # lattice origin; equals the region's start point
    start_index: int

    @property
    def node_count(self) -> int:
        return len(self.centers)

    def total_reward(self) -> float:
        return math.fsum(self.rewards)

    def pixel_vertices(self, i: int) -> list[Vec2]:
        cx, cy = self.centers[i]
        if self.kind == "square":
            return [(cx - 0.5, cy - 0.5), (cx + 0.5, cy - 0.5),
                    (cx + 0.5, cy + 0.5), (cx - 0.5, cy + 0.5)]
        return [(cx + dx, cy + dy) for dx, dy in _HEX_CORNERS]


@dataclass
class DualGraph:
    """Undirected travel graph on pixel centers.

    motion "rectilinear": unit steps between side-adjacent squares.
    motion "arbitrary":   unit steps plus sqrt(2) diagonal steps.
    motion "triangular":  sqrt(3) steps between edge-adjacent hexagons.
    """

    node_count: int
    edges: list[tuple[int, int, float]]
    motion: str
    _adj: list[list[tuple[int, float]]] = field(default=None, repr=False)

    def neighbors(self, i: int) -> list[tuple[int, float]]:
        if self._adj is None:
            adj: list[list[tuple[int, float]]] = [[] for _ in range(self.node_count)]
            for a, b, w in self.edges:
                adj[a].append((b, w))
                adj[b].append((a, w))
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj[i]


def _square_pixel(cx: float, cy: float) -> list[Vec2]:
    return [(cx - 0.5, cy - 0.5), (cx + 0.5, cy - 0.5),
            (cx + 0.5, cy + 0.5), (cx - 0.5, cy + 0.5)]


def _hex_center(sx: float, sy: float, q: int, r: int) -> Vec2:
    return (sx + 1.5 * q, sy + SQRT3 * (r + 0.5 * q))


def _hex_pixel(cx: float, cy: float) -> list[Vec2]:
    return [(cx + dx, cy + dy) for dx, dy in _HEX_CORNERS]


_SIDE_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_HEX_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def build_square_grid(region: PolygonalRegion) -> PixelGrid:
    """Unit-pixel grid for a square sensor of side 1 centered on the robot."""
    return _build_grid(region, "square")


def build_hex_grid(region: PolygonalRegion) -> PixelGrid:
    """Hexagonal grid for a circular sensor of radius 1 centered on the robot."""
    return _build_grid(region, "hexagonal")


def _build_grid(region: PolygonalRegion, kind: str) -> PixelGrid:
    sx, sy = region.start.x, region.start.y
    minx, miny, maxx, maxy = region.bounds()

    cells: dict[tuple[int, int], tuple[Vec2, float]] = {}
    if kind == "square":
        i0 = math.floor(minx - sx - 0.5) - 1
        i1 = math.ceil(maxx - sx + 0.5) + 1
        j0 = math.floor(miny - sy - 0.5) - 1
        j1 = math.ceil(maxy - sy + 0.5) + 1
        for j in range(j0, j1 + 1):
            for i in range(i0, i1 + 1):
                c = (sx + i, sy + j)
                r = clip_pixel(region, _square_pixel(*c))
                if r > MIN_REWARD or (i, j) == (0, 0):
                    cells[(i, j)] = (c, r)
        steps = _SIDE_STEPS
    elif kind == "hexagonal":
        q0 = math.floor((minx - sx - 1.0) / 1.5) - 1
        q1 = math.ceil((maxx - sx + 1.0) / 1.5) + 1
        for q in range(q0, q1 + 1):
            r0 = math.floor((miny - sy - 1.0) / SQRT3 - 0.5 * q) - 1
            r1 = math.ceil((maxy - sy + 1.0) / SQRT3 - 0.5 * q) + 1
            for r in range(r0, r1 + 1):
                c = _hex_center(sx, sy, q, r)
                a = clip_pixel(region, _hex_pixel(*c))
                if a > MIN_REWARD or (q, r) == (0, 0):
                    cells[(q, r)] = (c, a)
        steps = _HEX_STEPS
    else:
        raise ValueError(f"unknown grid kind {kind!r}")

    bridges = _bridge_cells(set(cells), steps)
    for cell in bridges:
        if kind == "square":
            c = (sx + cell[0], sy + cell[1])
        else:
            c = _hex_center(sx, sy, cell[0], cell[1])
        cells[cell] = (c, 0.0)

    order = sorted(cells)  # row-major over lattice coordinates
    centers = tuple(cells[k][0] for k in order)
    rewards = tuple(cells[k][1] for k in order)
    start_index = order.index((0, 0))
    return PixelGrid(kind=kind, centers=centers, rewards=rewards,
                     origin_shift=Point(sx, sy), start_index=start_index)


def _bridge_cells(kept: set[tuple[int, int]],
                  steps: tuple[tuple[int, int], ...]) -> list[tuple[int, int]]:
    """Zero-reward lattice cells that reconnect a fragmented pixel set.

    Components are joined to the component containing the start cell
    (0, 0) by breadth-first search through empty lattice cells, shortest
    chains first, scanning in sorted order so results are deterministic.
    """
    def component(seed: tuple[int, int], members: set) -> set:
        comp = {seed}
        stack = [seed]
        while stack:
            i, j = stack.pop()
            for di, dj in steps:
                n = (i + di, j + dj)
                if n in members and n not in comp:
                    comp.add(n)
                    stack.append(n)
        return comp

    added: list[tuple[int, int]] = []
    cells = set(kept)
    while True:
        home = component((0, 0), cells)
        rest = cells - home
        if not rest:
            return added
        # BFS from the home component through arbitrary lattice cells.
        frontier = sorted(home)
        parent: dict[tuple[int, int], tuple[int, int] | None] = {c: None for c in frontier}
        hit = None
        while frontier and hit is None:
            nxt = []
            for cell in frontier:
                i, j = cell
                for di, dj in steps:
                    n = (i + di, j + dj)
                    if n in parent:
                        continue
                    parent[n] = cell
                    if n in rest:
                        hit = n
                        break
                    nxt.append(n)
                if hit is not None:
                    break
            frontier = sorted(nxt)
        if hit is None:  # cannot happen on a finite lattice walk
            raise RuntimeError("bridge search failed")
        walk = parent[hit]
        while walk is not None and walk not in cells:
            added.append(walk)
            cells.add(walk)
            walk = parent[walk]


def build_dual_graph(grid: PixelGrid, motion: str = "rectilinear") -> DualGraph:
    """Adjacency between pixel centers for the requested motion model."""
    if grid.kind == "square":
        if motion not in ("rectilinear", "arbitrary"):
            raise ValueError(f"motion {motion!r} not defined on square grids")
    elif motion != "triangular":
        raise ValueError(f"motion {motion!r} not defined on hexagonal grids")

    index: dict[tuple[int, int], int] = {}
    sx, sy = grid.origin_shift.x, grid.origin_shift.y
    for k, (cx, cy) in enumerate(grid.centers):
        if grid.kind == "square":
            cell = (round(cx - sx), round(cy - sy))
        else:
            q = round((cx - sx) / 1.5)
            cell = (q, round((cy - sy) / SQRT3 - 0.5 * q))
        index[cell] = k

    edges: list[tuple[int, int, float]] = []
    if motion == "triangular":
        steps = [(s, SQRT3) for s in _HEX_STEPS]
    elif motion == "arbitrary":
        steps = [(s, 1.0) for s in _SIDE_STEPS]
        steps += [(s, SQRT2) for s in ((1, 1), (1, -1), (-1, 1), (-1, -1))]
    else:
        steps = [(s, 1.0) for s in _SIDE_STEPS]

    for cell in sorted(index):
        a = index[cell]
        for (di, dj), w in steps:
            n = (cell[0] + di, cell[1] + dj)
            b = index.get(n)
            if b is not None and a < b:
                edges.append((a, b, w))
    return DualGraph(node_count=grid.node_count, edges=edges, motion=motion)


def grid_to_json(grid: PixelGrid, graph: DualGraph) -> dict:
    return {
        "kind": grid.kind,
        "centers": [[x, y] for x, y in grid.centers],
        "rewards": list(grid.rewards),
        "edges": [[a, b, w] for a, b, w in graph.edges],
        "start_index": grid.start_index,
    }
