"""Continuous-footprint target detection along piecewise-linear routes.

The planner thinks in pixels; the simulator does not.  A target placed
anywhere in the region is detected the moment it enters the sensor
footprint (a side-1 axis-aligned square or a radius-1 disk, both
closed) as the robot moves along the straight segments between pixel
centers.  Detection times are solved in closed form per segment.

Monte Carlo trials draw the trial seed from a fixed splitmix64 mix of
the master seed and the trial index, so any subset of trials can be
reproduced independently and aggregation order cannot change results.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass

import numpy as np

from .geometry import PolygonalRegion, sample_uniform, _xy
from .heuristics import Route

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Cutter:
    """Sensor footprint centered on the robot."""

    shape: str  # "square" | "circle"
    half_extent: float  # half side for squares, radius for circles

    def __post_init__(self):
        if self.shape not in ("square", "circle"):
            raise ValueError(f"unknown cutter shape {self.shape!r}")
        if self.half_extent <= 0:
            raise ValueError("half_extent must be positive")


SQUARE_CUTTER = Cutter(shape="square", half_extent=0.5)
CIRCLE_CUTTER = Cutter(shape="circle", half_extent=1.0)


def _route_polyline(route: Route, centers) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray([centers[w] for w in route.waypoints], dtype=float)
    cum = np.asarray(route.cumulative_length, dtype=float)
    return pts, cum


def first_detection_time(route: Route, centers, target, cutter: Cutter) -> float | None:
    """Arc length at which the footprint first contains the target, else None."""
    pts, cum = _route_polyline(route, centers)
    tx, ty = _xy(target)
    h = cutter.half_extent

    if len(pts) == 1:
        if _contains(pts[0, 0], pts[0, 1], tx, ty, cutter):
            return 0.0
        return None

    p0 = pts[:-1]
    seg = pts[1:] - p0
    lengths = cum[1:] - cum[:-1]
    safe = np.where(lengths > 0.0, lengths, 1.0)
    ux = seg[:, 0] / safe
    uy = seg[:, 1] / safe

    if cutter.shape == "square":
        lo_x, hi_x = _axis_window(p0[:, 0], ux, tx, h, lengths)
        lo_y, hi_y = _axis_window(p0[:, 1], uy, ty, h, lengths)
        lo = np.maximum(lo_x, lo_y)
        hi = np.minimum(hi_x, hi_y)
    else:
        dx = p0[:, 0] - tx
        dy = p0[:, 1] - ty
        b = ux * dx + uy * dy
        c = dx * dx + dy * dy - h * h
        disc = b * b - c
        ok = disc >= 0.0
        root = np.sqrt(np.where(ok, disc, 0.0))
        lo = np.where(ok, -b - root, np.inf)
        hi = np.where(ok, -b + root, -np.inf)

    lo = np.maximum(lo, 0.0)
    hi = np.minimum(hi, lengths)
    feasible = np.nonzero(lo <= hi)[0]
    if feasible.size == 0:
        return None
    k = int(feasible[0])  # segments are ordered in time
    return float(cum[k] + lo[k])


def _axis_window(x0, u, t, h, lengths):
    """Parameter interval where |x0 + s*u - t| <= h along each segment."""
    moving = np.abs(u) > 1e-15
    safe_u = np.where(moving, u, 1.0)
    a = (t - h - x0) / safe_u
    b = (t + h - x0) / safe_u
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    parked = np.abs(x0 - t) <= h
    lo = np.where(moving, lo, np.where(parked, 0.0, np.inf))
    hi = np.where(moving, hi, np.where(parked, lengths, -np.inf))
    return lo, hi


def _contains(px: float, py: float, tx: float, ty: float, cutter: Cutter) -> bool:
    h = cutter.half_extent
    if cutter.shape == "square":
        return abs(px - tx) <= h and abs(py - ty) <= h
    return (px - tx) ** 2 + (py - ty) ** 2 <= h * h


def splitmix64(x: int) -> int:
    """One splitmix64 step; the documented trial-seed mixing primitive."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial: int) -> int:
    """Per-trial seed: splitmix64 over the master seed advanced to the trial."""
    return splitmix64(((master_seed & _MASK64) * 0x9E3779B97F4A7C15 + trial) & _MASK64)


@dataclass
class SimulationReport:
    name: str
    trials: int
    mean: float
    std: float
    undetected: int
    wall_time_seconds: float
    seed: int


def monte_carlo(route: Route, centers, region: PolygonalRegion, cutter: Cutter,
                trials: int, seed: int, name: str = "route") -> SimulationReport:
    """Uniform-target detection-time statistics for a route.

    Mean and standard deviation are over detected trials only; trials the
    route never detects are counted separately.  Sums use math.fsum, so
    the aggregate does not depend on accumulation order.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    t0 = time.perf_counter()
    times = []
    undetected = 0
    for i in range(trials):
        target = sample_uniform(region, trial_seed(seed, i))
        t = first_detection_time(route, centers, target, cutter)
        if t is None:
            undetected += 1
        else:
            times.append(t)
    wall = time.perf_counter() - t0

    if times:
        mean = math.fsum(times) / len(times)
        if len(times) > 1:
            std = math.sqrt(math.fsum((t - mean) ** 2 for t in times) / (len(times) - 1))
        else:
            std = 0.0
    else:
        mean = math.nan
        std = math.nan
    return SimulationReport(name=name, trials=trials, mean=mean, std=std,
                            undetected=undetected, wall_time_seconds=wall,
                            seed=seed)


def compare(reports: list[SimulationReport]) -> list[tuple]:
    """Rows (name, mean, std, wall_time_seconds, trials, seed), input order."""
    return [(r.name, r.mean, r.std, r.wall_time_seconds, r.trials, r.seed)
            for r in reports]


def reports_to_csv(reports: list[SimulationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "mean", "std", "wall_time_seconds", "trials", "seed"])
    for row in compare(reports):
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def report_to_json(report: SimulationReport) -> dict:
    return {
        "name": report.name,
        "trials": report.trials,
        "mean": report.mean,
        "std": report.std,
        "undetected": report.undetected,
        "wall_time_seconds": report.wall_time_seconds,
        "seed": report.seed,
    }
