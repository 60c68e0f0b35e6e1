"""Shared fixtures: a desk corpus of tiny polyomino regions (exhaustive
oracles stay tractable at <= 9 pixels) plus helpers to discretize them.
"""

from __future__ import annotations

import pytest

from mowsearch.discretize import build_dual_graph, build_square_grid
from mowsearch.regions import cells_to_region

# name -> (cells, start_cell); all have at most 9 unit pixels
DESK_SHAPES = {
    "strip1": ({(0, 0)}, (0, 0)),
    "strip2": ({(0, 0), (1, 0)}, (0, 0)),
    "strip3": ({(0, 0), (1, 0), (2, 0)}, (1, 0)),
    "strip4": ({(0, 0), (1, 0), (2, 0), (3, 0)}, (0, 0)),
    "square4": ({(0, 0), (1, 0), (0, 1), (1, 1)}, (0, 0)),
    "s4": ({(1, 0), (2, 0), (0, 1), (1, 1)}, (1, 0)),
    "l5": ({(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)}, (0, 0)),
    "t5": ({(0, 0), (1, 0), (2, 0), (1, 1), (1, 2)}, (1, 0)),
    "plus5": ({(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)}, (1, 1)),
    "rect6": ({(x, y) for x in range(3) for y in range(2)}, (0, 0)),
    "u7": ({(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (2, 2)}, (1, 0)),
    "ring8": ({(x, y) for x in range(3) for y in range(3)} - {(1, 1)}, (0, 0)),
    "square9": ({(x, y) for x in range(3) for y in range(3)}, (1, 1)),
}


def desk_region(name):
    cells, start = DESK_SHAPES[name]
    return cells_to_region(cells, cell_size=1.0, start_cell=start)


def desk_instance(name, motion="rectilinear"):
    """(region, grid, graph) for one desk shape."""
    region = desk_region(name)
    grid = build_square_grid(region)
    graph = build_dual_graph(grid, motion=motion)
    return region, grid, graph


@pytest.fixture(scope="session")
def desk_corpus():
    return [(name, desk_region(name)) for name in DESK_SHAPES]


@pytest.fixture(scope="session")
def strip4():
    return desk_instance("strip4")


@pytest.fixture(scope="session")
def square9():
    return desk_instance("square9")


@pytest.fixture(scope="session")
def ring8():
    return desk_instance("ring8")
