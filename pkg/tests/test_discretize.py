"""Pixel grids, reward clipping, bridging, and dual graph construction."""

import math

import pytest

from mowsearch.discretize import (
    MIN_REWARD,
    build_dual_graph,
    build_hex_grid,
    build_square_grid,
    grid_to_json,
)
from mowsearch.geometry import PolygonalRegion, region_area
from mowsearch.regions import random_region
from mowsearch.tours import shortest_path_metric

from oracles import shapely_hex_area, shapely_pixel_area, shapely_region

SQRT3 = math.sqrt(3.0)
HEX_AREA = 3.0 * SQRT3 / 2.0  # flat-top, circumradius 1


def rect_region(w, h, start=(0.5, 0.5)):
    return PolygonalRegion([(0, 0), (w, 0), (w, h), (0, h)], [], start)


# ---------------------------------------------------------------------------
# square grids

def test_square_grid_3x3():
    grid = build_square_grid(rect_region(3, 3))
    assert grid.kind == "square"
    assert grid.node_count == 9
    assert all(r == pytest.approx(1.0, abs=1e-12) for r in grid.rewards)
    assert grid.total_reward() == pytest.approx(9.0, rel=1e-12)


def test_square_grid_partial_column():
    # 2.5 x 2 rectangle: the rightmost pixel column is clipped to half area
    grid = build_square_grid(rect_region(2.5, 2))
    assert grid.node_count == 6
    rewards = sorted(grid.rewards)
    assert rewards[:2] == pytest.approx([0.5, 0.5], abs=1e-12)
    assert rewards[2:] == pytest.approx([1.0] * 4, abs=1e-12)
    assert grid.total_reward() == pytest.approx(5.0, rel=1e-12)


def test_square_grid_start_pixel_alignment():
    grid = build_square_grid(rect_region(3, 3, start=(1.25, 2.0)))
    cx, cy = grid.centers[grid.start_index]
    assert cx == pytest.approx(1.25, abs=1e-12)
    assert cy == pytest.approx(2.0, abs=1e-12)


def test_square_grid_start_pixel_kept_when_empty():
    # start in a sharp corner: its pixel may carry almost no area but stays
    r = PolygonalRegion([(0, 0), (40, 0), (0.02, 0.01)], [], (0.01, 0.005))
    grid = build_square_grid(r)
    assert 0 <= grid.start_index < grid.node_count


def test_square_grid_deterministic():
    region = random_region(3, cells=10, cell_size=2.0, holes=1)
    a = build_square_grid(region)
    b = build_square_grid(region)
    assert a.centers == b.centers
    assert a.rewards == b.rewards
    assert a.start_index == b.start_index


@pytest.mark.parametrize("seed", range(5))
def test_square_grid_conserves_area(seed):
    region = random_region(seed + 10, cells=12, cell_size=2.5, holes=1)
    grid = build_square_grid(region)
    assert grid.total_reward() == pytest.approx(region_area(region), rel=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_square_grid_rewards_match_shapely(seed):
    region = random_region(seed + 30, cells=8, cell_size=2.0, holes=0)
    poly = shapely_region(region)
    grid = build_square_grid(region)
    for (cx, cy), r in zip(grid.centers, grid.rewards):
        assert r == pytest.approx(shapely_pixel_area(poly, cx, cy), abs=1e-9)


def test_pixel_vertices_square():
    grid = build_square_grid(rect_region(1, 1))
    vs = grid.pixel_vertices(0)
    assert sorted(vs) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]


# ---------------------------------------------------------------------------
# hex grids

def hexagon_region(radius=1.0, start=(0.0, 0.0)):
    pts = [(radius * math.cos(k * math.pi / 3), radius * math.sin(k * math.pi / 3))
           for k in range(6)]
    return PolygonalRegion(pts, [], start)


def test_hex_grid_single_cell():
    # region equals one grid hexagon: a single full-reward pixel
    grid = build_hex_grid(hexagon_region())
    assert grid.kind == "hexagonal"
    assert grid.node_count == 1
    assert grid.rewards[0] == pytest.approx(2.598076211353316, abs=1e-12)
    assert grid.rewards[0] == pytest.approx(HEX_AREA, abs=1e-12)


def test_hex_grid_disk():
    # disk of radius 2 (as a 96-gon): center cell plus one full ring
    pts = [(2 * math.cos(2 * math.pi * k / 96), 2 * math.sin(2 * math.pi * k / 96))
           for k in range(96)]
    region = PolygonalRegion(pts, [], (0.0, 0.0))
    grid = build_hex_grid(region)
    assert grid.node_count == 7
    rewards = sorted(grid.rewards)
    assert rewards[6] == pytest.approx(HEX_AREA, abs=1e-12)
    for r in rewards[:6]:
        assert r == pytest.approx(1.6598874334723583, abs=1e-9)
    assert grid.total_reward() == pytest.approx(region_area(region), rel=1e-9)


def test_hex_grid_start_alignment():
    grid = build_hex_grid(hexagon_region(start=(0.0, 0.0)))
    cx, cy = grid.centers[grid.start_index]
    assert (cx, cy) == pytest.approx((0.0, 0.0), abs=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_hex_grid_conserves_area(seed):
    region = random_region(seed + 20, cells=12, cell_size=2.5, holes=1)
    grid = build_hex_grid(region)
    assert grid.total_reward() == pytest.approx(region_area(region), rel=1e-9)


def test_hex_grid_rewards_match_shapely():
    region = random_region(41, cells=8, cell_size=2.0, holes=0)
    poly = shapely_region(region)
    grid = build_hex_grid(region)
    for (cx, cy), r in zip(grid.centers, grid.rewards):
        assert r == pytest.approx(shapely_hex_area(poly, cx, cy), abs=1e-9)


def test_pixel_vertices_hex():
    grid = build_hex_grid(hexagon_region())
    vs = grid.pixel_vertices(0)
    assert len(vs) == 6
    for x, y in vs:
        assert math.hypot(x, y) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# bridging disconnected fragments

def spiked_region(e=4e-7):
    # 5x2 block with a thin 45-degree spike off its top-right corner; the
    # spike's surviving pixels sit on diagonal lattice cells, which square
    # adjacency does not connect, so the raw grid is fragmented.  Corner
    # slivers in the other cells have area ~e^2, far below the cutoff.
    outer = [
        (0, 0), (5, 0), (5, 2 - e), (7, 4 - e), (7, 4 + e),
        (5, 2 + e), (5, 2), (0, 2),
    ]
    return PolygonalRegion(outer, [], (0.5, 0.5))


def test_bridge_reconnects_fragments():
    region = spiked_region()
    grid = build_square_grid(region)
    # spike pixels survive with tiny reward and are bridged to the block
    zero = [i for i, r in enumerate(grid.rewards) if r == 0.0]
    assert zero
    spike = [i for i, r in enumerate(grid.rewards) if 0.0 < r < 1e-3]
    assert len(spike) == 2
    graph = build_dual_graph(grid, motion="rectilinear")
    metric = shortest_path_metric(graph)  # raises if still disconnected
    for i in spike:
        assert metric.d(grid.start_index, i) < math.inf
    assert grid.total_reward() == pytest.approx(region_area(region), rel=1e-9)


def test_no_bridge_when_connected():
    grid = build_square_grid(rect_region(3, 3))
    assert all(r > MIN_REWARD for r in grid.rewards)


# ---------------------------------------------------------------------------
# dual graphs

def test_dual_graph_rectilinear_edges():
    grid = build_square_grid(rect_region(3, 3))
    graph = build_dual_graph(grid, motion="rectilinear")
    assert graph.node_count == 9
    assert len(graph.edges) == 12
    for a, b, w in graph.edges:
        assert w == pytest.approx(1.0, abs=1e-12)
        (ax, ay), (bx, by) = grid.centers[a], grid.centers[b]
        assert math.hypot(bx - ax, by - ay) == pytest.approx(w, abs=1e-12)


def test_dual_graph_arbitrary_adds_diagonals():
    grid = build_square_grid(rect_region(3, 3))
    graph = build_dual_graph(grid, motion="arbitrary")
    lengths = sorted(round(w, 12) for _, _, w in graph.edges)
    assert len(graph.edges) == 12 + 8  # 4 diagonal pairs per inner 2x2 block
    assert set(lengths) == {1.0, round(math.sqrt(2.0), 12)}


def test_dual_graph_triangular_edges():
    pts = [(2 * math.cos(2 * math.pi * k / 96), 2 * math.sin(2 * math.pi * k / 96))
           for k in range(96)]
    region = PolygonalRegion(pts, [], (0.0, 0.0))
    grid = build_hex_grid(region)
    graph = build_dual_graph(grid, motion="triangular")
    assert len(graph.edges) == 12  # 6 spokes + 6 ring edges
    for a, b, w in graph.edges:
        assert w == pytest.approx(SQRT3, abs=1e-12)


def test_dual_graph_motion_kind_mismatch():
    sq = build_square_grid(rect_region(2, 2))
    hx = build_hex_grid(hexagon_region())
    with pytest.raises(ValueError):
        build_dual_graph(sq, motion="triangular")
    with pytest.raises(ValueError):
        build_dual_graph(hx, motion="rectilinear")
    with pytest.raises(ValueError):
        build_dual_graph(sq, motion="teleport")


def test_dual_graph_neighbors_sorted():
    grid = build_square_grid(rect_region(3, 3))
    graph = build_dual_graph(grid, motion="rectilinear")
    for v in range(graph.node_count):
        nbrs = graph.neighbors(v)
        assert nbrs == sorted(nbrs)


def test_grid_to_json_schema():
    grid = build_square_grid(rect_region(2, 2))
    graph = build_dual_graph(grid, motion="rectilinear")
    data = grid_to_json(grid, graph)
    assert data["kind"] == "square"
    assert data["start_index"] == grid.start_index
    assert len(data["centers"]) == len(data["rewards"]) == grid.node_count
    assert all(len(e) == 3 for e in data["edges"])
