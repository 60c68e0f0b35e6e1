"""Polygonal regions with holes: areas, pixel clipping, containment, sampling.

A region is one counterclockwise outer ring plus zero or more clockwise
hole rings.  The region is treated as a closed set: points on the outer
boundary or on a hole boundary belong to the region.  All functions are
pure; randomness enters only through explicit seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Vec2 = tuple[float, float]
Ring = tuple[Vec2, ...]

# Collinearity / degeneracy tolerance for clipping arithmetic.
EPS = 1e-12
# Distance tolerance for the point-on-boundary test.
BOUNDARY_TOL = 1e-9
# Rejection sampling gives up after this many draws.
MAX_SAMPLE_TRIES = 100_000


@dataclass(frozen=True)
class Point:
    x: float
    y: float


def _xy(p) -> Vec2:
    """Accept a Point or a bare (x, y) pair."""
    if isinstance(p, Point):
        return (p.x, p.y)
    x, y = p
    return (float(x), float(y))


def shoelace_area(ring: Sequence[Vec2]) -> float:
    """Signed area of a ring: positive counterclockwise, negative clockwise."""
    terms = []
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        terms.append(x0 * y1 - x1 * y0)
    return 0.5 * math.fsum(terms)


def _ring_is_simple(ring: Sequence[Vec2]) -> bool:
    """Brute-force check that no two non-adjacent edges intersect."""
    n = len(ring)
    segs = [(ring[i], ring[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        (ax, ay), (bx, by) = segs[i]
        if abs(ax - bx) < EPS and abs(ay - by) < EPS:
            return False  # zero-length edge
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share a vertex by design
            (cx, cy), (dx, dy) = segs[j]
            if _segments_cross((ax, ay), (bx, by), (cx, cy), (dx, dy)):
                return False
    return True


def _segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        if v > EPS:
            return 1
        if v < -EPS:
            return -1
        return 0

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    # Collinear overlap also counts as non-simple.
    def on(p, q, r):
        return (orient(p, q, r) == 0
                and min(p[0], q[0]) - EPS <= r[0] <= max(p[0], q[0]) + EPS
                and min(p[1], q[1]) - EPS <= r[1] <= max(p[1], q[1]) + EPS)

    return on(a, b, c) or on(a, b, d) or on(c, d, a) or on(c, d, b)


class RegionError(ValueError):
    """Raised for malformed region input; carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class PolygonalRegion:
    """Polygon with holes plus a designated start point.

    The outer ring is stored counterclockwise and holes clockwise; input
    rings in the wrong orientation are reversed.  Rings must be simple,
    holes must lie strictly inside the outer ring and be pairwise
    disjoint, and the start must lie in the (closed) region.
    """

    def __init__(self, outer: Iterable, holes: Iterable = (), start=None):
        out = tuple(_xy(p) for p in outer)
        if len(out) < 3:
            raise RegionError("outer", "ring needs at least 3 vertices")
        for x, y in out:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise RegionError("outer", "non-finite coordinate")
        if not _ring_is_simple(out):
            raise RegionError("outer", "ring is not simple")
        if shoelace_area(out) < 0:
            out = out[::-1]
        self.outer: Ring = out

        hs = []
        for k, h in enumerate(holes):
            ring = tuple(_xy(p) for p in h)
            if len(ring) < 3:
                raise RegionError(f"holes[{k}]", "ring needs at least 3 vertices")
            for x, y in ring:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise RegionError(f"holes[{k}]", "non-finite coordinate")
            if not _ring_is_simple(ring):
                raise RegionError(f"holes[{k}]", "ring is not simple")
            if shoelace_area(ring) > 0:
                ring = ring[::-1]
            hs.append(ring)
        self.holes: tuple[Ring, ...] = tuple(hs)

        self._cache: dict = {}
        for k, ring in enumerate(self.holes):
            for x, y in ring:
                if not _point_in_ring_closed(self.outer, x, y) or \
                        _point_on_ring(self.outer, x, y):
                    raise RegionError(f"holes[{k}]", "hole not strictly inside outer ring")
            for j in range(k):
                if _rings_touch(self.holes[j], ring):
                    raise RegionError(f"holes[{k}]", f"hole overlaps hole {j}")

        if start is None:
            raise RegionError("start", "missing start point")
        sx, sy = _xy(start)
        if not (math.isfinite(sx) and math.isfinite(sy)):
            raise RegionError("start", "non-finite coordinate")
        self.start = Point(sx, sy)
        if not contains_point(self, self.start):
            raise RegionError("start", "start point lies outside the region")

    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.outer]
        ys = [p[1] for p in self.outer]
        return (min(xs), min(ys), max(xs), max(ys))

    def _ring_arrays(self):
        """Per-ring edge arrays for the vectorized containment tests."""
        arrs = self._cache.get("rings")
        if arrs is None:
            arrs = []
            for ring in (self.outer,) + self.holes:
                v = np.asarray(ring, dtype=float)
                w = np.roll(v, -1, axis=0)
                arrs.append((v, w))
            self._cache["rings"] = arrs
        return arrs


def _rings_touch(a: Ring, b: Ring) -> bool:
    # Disjointness test for hole pairs: any vertex inside the other ring,
    # or any edge crossing, counts as touching.
    for x, y in b:
        if _point_in_ring_closed(a, x, y) or _point_on_ring(a, x, y):
            return True
    for x, y in a:
        if _point_in_ring_closed(b, x, y) or _point_on_ring(b, x, y):
            return True
    na, nb = len(a), len(b)
    for i in range(na):
        for j in range(nb):
            if _segments_cross(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]):
                return True
    return False


def _point_in_ring_closed(ring: Sequence[Vec2], x: float, y: float) -> bool:
    """Even-odd interior test; behavior on the boundary is unspecified."""
    inside = False
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xi = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if x < xi:
                inside = not inside
    return inside


def _point_on_ring(ring: Sequence[Vec2], x: float, y: float, tol: float = BOUNDARY_TOL) -> bool:
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        dx, dy = x1 - x0, y1 - y0
        seg2 = dx * dx + dy * dy
        if seg2 <= tol * tol:
            continue
        t = ((x - x0) * dx + (y - y0) * dy) / seg2
        t = min(1.0, max(0.0, t))
        px, py = x0 + t * dx, y0 + t * dy
        if (x - px) * (x - px) + (y - py) * (y - py) <= tol * tol:
            return True
    return False


def region_area(region: PolygonalRegion) -> float:
    """Area of the region: outer ring area minus hole areas."""
    a = shoelace_area(region.outer)
    for h in region.holes:
        a += shoelace_area(h)  # holes are clockwise, so this subtracts
    return a


def contains_point(region: PolygonalRegion, p) -> bool:
    """Closed-region membership: boundary points (outer or hole) count as inside."""
    x, y = _xy(p)
    (ov, ow) = region._ring_arrays()[0]
    if not _bbox_ok(ov, x, y):
        return False
    for (v, w) in region._ring_arrays():
        if _on_ring_np(v, w, x, y):
            return True
    if not _in_ring_np(ov, ow, x, y):
        return False
    for (v, w) in region._ring_arrays()[1:]:
        if _in_ring_np(v, w, x, y):
            return False
    return True


def _bbox_ok(v: np.ndarray, x: float, y: float) -> bool:
    return (v[:, 0].min() - BOUNDARY_TOL <= x <= v[:, 0].max() + BOUNDARY_TOL
            and v[:, 1].min() - BOUNDARY_TOL <= y <= v[:, 1].max() + BOUNDARY_TOL)


def _on_ring_np(v: np.ndarray, w: np.ndarray, x: float, y: float) -> bool:
    d = w - v
    seg2 = d[:, 0] ** 2 + d[:, 1] ** 2
    seg2 = np.where(seg2 == 0.0, 1.0, seg2)
    t = ((x - v[:, 0]) * d[:, 0] + (y - v[:, 1]) * d[:, 1]) / seg2
    t = np.clip(t, 0.0, 1.0)
    px = v[:, 0] + t * d[:, 0]
    py = v[:, 1] + t * d[:, 1]
    dist2 = (x - px) ** 2 + (y - py) ** 2
    return bool((dist2 <= BOUNDARY_TOL * BOUNDARY_TOL).any())


def _in_ring_np(v: np.ndarray, w: np.ndarray, x: float, y: float) -> bool:
    cond = (v[:, 1] > y) != (w[:, 1] > y)
    if not cond.any():
        return False
    vy = np.where(cond, w[:, 1] - v[:, 1], 1.0)
    xi = v[:, 0] + (y - v[:, 1]) * (w[:, 0] - v[:, 0]) / vy
    return bool((cond & (x < xi)).sum() % 2 == 1)


def _clip_halfplane(poly: list[Vec2], a: Vec2, b: Vec2) -> list[Vec2]:
    """Keep the part of poly on or left of the directed line a->b."""
    if not poly:
        return []
    ex, ey = b[0] - a[0], b[1] - a[1]

    def side(p: Vec2) -> float:
        return ex * (p[1] - a[1]) - ey * (p[0] - a[0])

    out: list[Vec2] = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = side(p), side(q)
        if sp >= -EPS:
            out.append(p)
            if sq < -EPS and sp > EPS:
                out.append(_line_hit(p, q, sp, sq))
        elif sq > EPS:
            out.append(_line_hit(p, q, sp, sq))
    return out


def _line_hit(p: Vec2, q: Vec2, sp: float, sq: float) -> Vec2:
    t = sp / (sp - sq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def clip_ring_to_convex(ring: Sequence[Vec2], convex: Sequence[Vec2]) -> list[Vec2]:
    """Clip an arbitrary simple ring against a counterclockwise convex polygon.

    Output may contain degenerate bridge edges along the clip boundary when
    the ring enters and leaves the convex window several times; those
    bridges carry zero area, so the signed shoelace of the output equals
    the signed area of the true intersection.
    """
    poly = list(ring)
    m = len(convex)
    for i in range(m):
        poly = _clip_halfplane(poly, convex[i], convex[(i + 1) % m])
        if not poly:
            return []
    return poly


def clip_pixel(region: PolygonalRegion, pixel: Sequence[Vec2]) -> float:
    """Area of pixel ∩ region for a convex counterclockwise pixel."""
    # Work in pixel-local coordinates to keep the shoelace well conditioned.
    cx = math.fsum(p[0] for p in pixel) / len(pixel)
    cy = math.fsum(p[1] for p in pixel) / len(pixel)
    win = [(p[0] - cx, p[1] - cy) for p in pixel]

    minx = min(p[0] for p in win)
    maxx = max(p[0] for p in win)
    miny = min(p[1] for p in win)
    maxy = max(p[1] for p in win)

    total = 0.0
    for ring in (region.outer,) + region.holes:
        shifted = [(x - cx, y - cy) for x, y in ring]
        # Rings entirely outside the pixel window cannot contribute unless
        # they enclose it, so only skip when the window is outside the ring.
        rminx = min(p[0] for p in shifted)
        rmaxx = max(p[0] for p in shifted)
        rminy = min(p[1] for p in shifted)
        rmaxy = max(p[1] for p in shifted)
        if rmaxx < minx or rminx > maxx or rmaxy < miny or rminy > maxy:
            continue
        clipped = clip_ring_to_convex(shifted, win)
        if len(clipped) >= 3:
            total += shoelace_area(clipped)
    return max(0.0, total)


def sample_uniform(region: PolygonalRegion, seed: int) -> Point:
    """Deterministic uniform sample via rejection in the bounding box.

    Raises RuntimeError if MAX_SAMPLE_TRIES draws are rejected, which only
    happens for regions of vanishing area relative to their bounding box.
    """
    import random

    rng = random.Random(seed)
    minx, miny, maxx, maxy = region.bounds()
    w, h = maxx - minx, maxy - miny
    for _ in range(MAX_SAMPLE_TRIES):
        x = minx + rng.random() * w
        y = miny + rng.random() * h
        if contains_point(region, (x, y)):
            return Point(x, y)
    raise RuntimeError("rejection sampling failed; region area is degenerate")


def region_to_json(region: PolygonalRegion) -> dict:
    return {
        "outer": [[x, y] for x, y in region.outer],
        "holes": [[[x, y] for x, y in h] for h in region.holes],
        "start": [region.start.x, region.start.y],
    }


def region_from_json(data: dict) -> PolygonalRegion:
    """Build a region from the {"outer", "holes", "start"} mapping."""
    if not isinstance(data, dict):
        raise RegionError("region", "expected a JSON object")
    for field in ("outer", "start"):
        if field not in data:
            raise RegionError(field, "missing")
    outer = data["outer"]
    holes = data.get("holes", [])
    start = data["start"]
    if not isinstance(outer, list):
        raise RegionError("outer", "expected a list of [x, y] pairs")
    if not isinstance(holes, list):
        raise RegionError("holes", "expected a list of rings")
    if not (isinstance(start, list) and len(start) == 2):
        raise RegionError("start", "expected an [x, y] pair")
    try:
        return PolygonalRegion(outer, holes, start)
    except RegionError:
        raise
    except (TypeError, ValueError) as exc:
        raise RegionError("region", str(exc))
