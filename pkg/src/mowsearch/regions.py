"""Seeded generators for rectilinear test regions built from unit cells.

A region is described by a set of filled lattice cells.  Boundary edges of
the filled set are chained into rings: directed edges shared by two filled
cells cancel, the survivors form one counterclockwise outer ring plus one
clockwise ring per enclosed pocket, which become holes.
"""

from __future__ import annotations

import random
from typing import Iterable

from .geometry import PolygonalRegion

Cell = tuple[int, int]


def _fix_pinches(cells: set[Cell]) -> set[Cell]:
    """Fill one cell of every checkerboard 2x2 block so rings stay simple.

    Two filled cells meeting only at a corner would make the traced
    boundary visit that corner twice.
    """
    cells = set(cells)
    changed = True
    while changed:
        changed = False
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        for i in range(min(xs) - 1, max(xs) + 1):
            for j in range(min(ys) - 1, max(ys) + 1):
                a = (i, j) in cells
                b = (i + 1, j) in cells
                c = (i, j + 1) in cells
                d = (i + 1, j + 1) in cells
                if a and d and not b and not c:
                    cells.add((i + 1, j))
                    changed = True
                elif b and c and not a and not d:
                    cells.add((i, j))
                    changed = True
    return cells


def _boundary_loops(cells: set[Cell]) -> list[list[tuple[int, int]]]:
    """Chain uncancelled directed cell edges into closed vertex loops."""
    succ: dict[tuple[int, int], tuple[int, int]] = {}
    for (i, j) in cells:
        if (i, j - 1) not in cells:
            succ[(i, j)] = (i + 1, j)        # bottom, traversed rightward
        if (i + 1, j) not in cells:
            succ[(i + 1, j)] = (i + 1, j + 1)  # right, upward
        if (i, j + 1) not in cells:
            succ[(i + 1, j + 1)] = (i, j + 1)  # top, leftward
        if (i - 1, j) not in cells:
            succ[(i, j + 1)] = (i, j)          # left, downward

    loops = []
    seen: set[tuple[int, int]] = set()
    for v0 in sorted(succ):
        if v0 in seen:
            continue
        loop = [v0]
        seen.add(v0)
        v = succ[v0]
        while v != v0:
            loop.append(v)
            seen.add(v)
            v = succ[v]
        loops.append(loop)
    return loops


def _merge_collinear(loop: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    n = len(loop)
    for k in range(n):
        px, py = loop[(k - 1) % n]
        x, y = loop[k]
        nx, ny = loop[(k + 1) % n]
        if (x - px) * (ny - y) != (y - py) * (nx - x):
            out.append((x, y))
    return out


def cells_to_region(cells: Iterable[Cell], cell_size: float = 1.0,
                    start_cell: Cell | None = None) -> PolygonalRegion:
    """Region covering the filled cells, start at the center of start_cell."""
    filled = _fix_pinches(set(cells))
    if not filled:
        raise ValueError("no cells")
    if start_cell is None:
        start_cell = min(filled)
    if start_cell not in filled:
        raise ValueError("start_cell is not filled")

    loops = [_merge_collinear(l) for l in _boundary_loops(filled)]
    outer = None
    holes = []
    for loop in loops:
        area2 = 0
        n = len(loop)
        for k in range(n):
            x0, y0 = loop[k]
            x1, y1 = loop[(k + 1) % n]
            area2 += x0 * y1 - x1 * y0
        if area2 > 0:
            if outer is not None:
                raise ValueError("cells are not connected")
            outer = loop
        else:
            holes.append(loop)
    if outer is None:
        raise ValueError("no outer boundary")

    s = cell_size
    sx, sy = (start_cell[0] + 0.5) * s, (start_cell[1] + 0.5) * s
    return PolygonalRegion(
        [(x * s, y * s) for x, y in outer],
        [[(x * s, y * s) for x, y in h] for h in holes],
        (sx, sy),
    )


def _connected(cells: set[Cell]) -> bool:
    if not cells:
        return False
    stack = [next(iter(sorted(cells)))]
    seen = {stack[0]}
    while stack:
        i, j = stack.pop()
        for n in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if n in cells and n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(cells)


def random_region(seed: int, cells: int = 12, cell_size: float = 3.0,
                  holes: int = 1) -> PolygonalRegion:
    """Random connected rectilinear region with up to `holes` square pockets.

    Deterministic for a fixed argument tuple.  The blob is grown cell by
    cell with a compactness bias, then interior cells are carved out to
    make holes where that keeps the blob connected.
    """
    rng = random.Random(seed)
    blob: set[Cell] = {(0, 0)}
    frontier: set[Cell] = {(1, 0), (-1, 0), (0, 1), (0, -1)}
    while len(blob) < cells:
        ranked = []
        for c in sorted(frontier):
            i, j = c
            support = sum((i + di, j + dj) in blob
                          for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)))
            ranked.append((c, support))
        # Compactness bias: prefer cells touching more of the blob.
        weights = [4 ** s for _, s in ranked]
        pick = rng.choices([c for c, _ in ranked], weights=weights)[0]
        blob.add(pick)
        frontier.discard(pick)
        i, j = pick
        for n in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if n not in blob:
                frontier.add(n)
    blob = _fix_pinches(blob)

    carved = 0
    interior = [c for c in sorted(blob)
                if all((c[0] + di, c[1] + dj) in blob
                       for di in (-1, 0, 1) for dj in (-1, 0, 1))]
    rng.shuffle(interior)
    removed: set[Cell] = set()
    for c in interior:
        if carved >= holes:
            break
        # Keep one-cell gaps between carved pockets so hole rings stay disjoint.
        if any(abs(c[0] - r[0]) <= 1 and abs(c[1] - r[1]) <= 1 for r in removed):
            continue
        trial = blob - {c}
        if _connected(trial):
            blob = trial
            removed.add(c)
            carved += 1

    # Deterministic start: filled cell closest to the centroid.
    cx = sum(c[0] for c in blob) / len(blob)
    cy = sum(c[1] for c in blob) / len(blob)
    start = min(blob, key=lambda c: ((c[0] - cx) ** 2 + (c[1] - cy) ** 2, c))
    return cells_to_region(blob, cell_size, start)
