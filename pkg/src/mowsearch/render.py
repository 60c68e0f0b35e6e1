"""SVG rendering of regions, pixel grids, and routes."""

from __future__ import annotations

from .discretize import PixelGrid
from .geometry import PolygonalRegion, _xy
from .heuristics import Route

# Stroke colors cycled per route leg.
LEG_COLORS = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
              "#a65628", "#f781bf", "#00838f"]


def render_svg(region: PolygonalRegion, grid: PixelGrid | None = None,
               route: Route | None = None, target=None,
               scale: float = 24.0) -> str:
    """Self-contained SVG: region with holes, pixel outlines, route legs."""
    minx, miny, maxx, maxy = region.bounds()
    pad = 1.5
    minx, miny, maxx, maxy = minx - pad, miny - pad, maxx + pad, maxy + pad
    w = (maxx - minx) * scale
    h = (maxy - miny) * scale

    def sx(x: float) -> float:
        return (x - minx) * scale

    def sy(y: float) -> float:
        return (maxy - y) * scale  # flip: SVG y grows downward

    def ring_path(ring) -> str:
        cmds = [f"{'M' if i == 0 else 'L'} {sx(x):.2f} {sy(y):.2f}"
                for i, (x, y) in enumerate(ring)]
        return " ".join(cmds) + " Z"

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             f'width="{w:.0f}" height="{h:.0f}" '
             f'viewBox="0 0 {w:.2f} {h:.2f}">']
    d = " ".join(ring_path(r) for r in (region.outer,) + region.holes)
    parts.append(f'<path d="{d}" fill="#edf2e6" stroke="#444444" '
                 f'stroke-width="1.5" fill-rule="evenodd" />')

    if grid is not None:
        cells = []
        for i in range(grid.node_count):
            pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}"
                           for x, y in grid.pixel_vertices(i))
            cells.append(f'<polygon points="{pts}" fill="none" '
                         f'stroke="#b9c4ce" stroke-width="0.6" />')
        parts.append(f'<g>{"".join(cells)}</g>')

    if route is not None and grid is not None:
        offsets = list(route.legs) + [len(route.waypoints) - 1]
        for leg in range(len(route.legs)):
            a, b = offsets[leg], offsets[leg + 1]
            if b <= a:
                continue
            pts = " ".join(f"{sx(grid.centers[v][0]):.2f},{sy(grid.centers[v][1]):.2f}"
                           for v in route.waypoints[a:b + 1])
            color = LEG_COLORS[leg % len(LEG_COLORS)]
            parts.append(f'<polyline points="{pts}" fill="none" '
                         f'stroke="{color}" stroke-width="2.2" '
                         f'stroke-linejoin="round" stroke-opacity="0.85" />')

    px, py = region.start.x, region.start.y
    parts.append(f'<circle cx="{sx(px):.2f}" cy="{sy(py):.2f}" r="5" '
                 f'fill="#111111" stroke="#ffffff" stroke-width="1.5" />')
    if target is not None:
        tx, ty = _xy(target)
        r = 4.5
        parts.append(f'<g stroke="#d81b60" stroke-width="2">'
                     f'<line x1="{sx(tx) - r:.2f}" y1="{sy(ty) - r:.2f}" '
                     f'x2="{sx(tx) + r:.2f}" y2="{sy(ty) + r:.2f}" />'
                     f'<line x1="{sx(tx) - r:.2f}" y1="{sy(ty) + r:.2f}" '
                     f'x2="{sx(tx) + r:.2f}" y2="{sy(ty) - r:.2f}" /></g>')
    parts.append("</svg>")
    return "\n".join(parts)
