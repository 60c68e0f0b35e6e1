"""Command-line front end.

Subcommands: discretize, plan, simulate, bench, render, gen-region.
Exit codes: 0 success, 2 malformed input, 3 infeasible request.
Diagnostics are emitted as one JSON object per line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import discretize, geometry, heuristics, quota, regions, render, schedule, sim
from .geometry import RegionError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


@dataclass
class RunConfig:
    region_path: str
    algorithm: str = "exptree"
    cutter: str = "square"
    motion: str = "rectilinear"
    quota_value: float | None = None
    budget: float | None = None
    epsilon: float = heuristics.DEFAULT_EPSILON
    trials: int = 1000
    seed: int = 0
    out_dir: str = "."


def _diag(**fields) -> None:
    print(json.dumps(fields, sort_keys=True), file=sys.stderr)


def _load_region(path: str) -> geometry.PolygonalRegion:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as exc:
        raise RegionError("region", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise RegionError("region", f"invalid JSON in {path}: {exc}")
    return geometry.region_from_json(data)


def _build(cfg: RunConfig):
    region = _load_region(cfg.region_path)
    if cfg.cutter == "square":
        grid = discretize.build_square_grid(region)
        motion = cfg.motion
    else:
        grid = discretize.build_hex_grid(region)
        motion = "triangular"
    graph = discretize.build_dual_graph(grid, motion)
    return region, grid, graph


def _write(out_dir: str, name: str, text: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def _json_text(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def cmd_discretize(cfg: RunConfig) -> int:
    region, grid, graph = _build(cfg)
    _write(cfg.out_dir, "grid.json", _json_text(discretize.grid_to_json(grid, graph)))
    _diag(event="discretize", pixels=grid.node_count, edges=len(graph.edges),
          total_reward=grid.total_reward(), area=geometry.region_area(region))
    print(f"pixels={grid.node_count} edges={len(graph.edges)} "
          f"total_reward={grid.total_reward():.6f}")
    return EXIT_OK


def _plan_route(cfg: RunConfig, grid, graph):
    from .tours import shortest_path_metric

    metric = shortest_path_metric(graph)
    t0 = time.perf_counter()
    if cfg.algorithm == "exptree":
        route = heuristics.exponential_tree_heuristic(
            graph, grid, grid.start_index, metric=metric)
        extra = {}
    elif cfg.algorithm == "minlatency":
        route = heuristics.min_latency_heuristic(
            graph, grid, grid.start_index, epsilon=cfg.epsilon, metric=metric)
        extra = {}
    elif cfg.algorithm == "expplan":
        plan = schedule.exponential_plan(graph, grid, grid.start_index, metric=metric)
        route = plan.route
        extra = {"plan": plan}
    else:
        raise ValueError(f"unknown algorithm {cfg.algorithm!r}")
    return route, time.perf_counter() - t0, extra, metric


def cmd_plan(cfg: RunConfig) -> int:
    region, grid, graph = _build(cfg)
    if cfg.algorithm == "quota":
        solver = quota.QuotaSolver(graph, grid, grid.start_index)
        if cfg.quota_value is not None:
            qt = solver.quota_tour(cfg.quota_value)
            scaled_quota = solver.scaled.scale_quota(cfg.quota_value)
        elif cfg.budget is not None:
            scaled_quota, qt = solver.max_quota_within_budget(cfg.budget)
        else:
            raise RegionError("quota", "algorithm 'quota' needs --quota or --budget")
        route = heuristics.realize_route(
            qt.tour.nodes + ([qt.tour.nodes[0]] if len(qt.tour.nodes) > 1 else []),
            solver.metric, grid)
        _write(cfg.out_dir, "route.json", _json_text(heuristics.route_to_json(route)))
        _diag(event="plan", algorithm="quota", length=qt.tour.length,
              collected=qt.collected, scaled_quota=scaled_quota,
              measured_c=qt.measured_c)
        print(f"length={qt.tour.length:.6f} collected={qt.collected:.6f} "
              f"measured_c={qt.measured_c:.3f}")
        return EXIT_OK

    route, wall, extra, _ = _plan_route(cfg, grid, graph)
    profile = schedule.coverage_profile(route, grid)
    expected = schedule.expected_detection_time(profile)
    _write(cfg.out_dir, "route.json", _json_text(heuristics.route_to_json(route)))
    meta = {"algorithm": cfg.algorithm, "expected_T": expected,
            "length": route.length, "pixels": grid.node_count,
            "planning_seconds": wall}
    if "plan" in extra:
        _write(cfg.out_dir, "plan.json",
               _json_text(schedule.plan_to_json(extra["plan"], expected)))
        meta["measured_c"] = extra["plan"].measured_c
    _write(cfg.out_dir, "meta.json", _json_text(meta))
    _diag(event="plan", algorithm=cfg.algorithm, expected_T=expected,
          length=route.length, planning_seconds=wall)
    print(f"algorithm={cfg.algorithm} expected_T={expected:.6f} "
          f"length={route.length:.6f}")
    return EXIT_OK


def _cutter_for(cfg: RunConfig) -> sim.Cutter:
    return sim.SQUARE_CUTTER if cfg.cutter == "square" else sim.CIRCLE_CUTTER


def _load_route(path: str, grid) -> heuristics.Route:
    try:
        with open(path) as f:
            data = json.load(f)
        route = heuristics.route_from_json(data)
    except OSError as exc:
        raise RegionError("route", f"cannot read {path}: {exc}")
    except (json.JSONDecodeError, ValueError) as exc:
        raise RegionError("route", str(exc))
    for v in route.waypoints:
        if v < 0 or v >= grid.node_count:
            raise RegionError("route", f"waypoint {v} is not a grid pixel")
    return route


def cmd_simulate(cfg: RunConfig, route_path: str) -> int:
    region, grid, graph = _build(cfg)
    route = _load_route(route_path, grid)
    report = sim.monte_carlo(route, grid.centers, region, _cutter_for(cfg),
                             cfg.trials, cfg.seed, name=cfg.algorithm)
    _write(cfg.out_dir, "report.json", _json_text(sim.report_to_json(report)))
    _write(cfg.out_dir, "report.csv", sim.reports_to_csv([report]))
    _diag(event="simulate", mean=report.mean, std=report.std,
          undetected=report.undetected, wall_time_seconds=report.wall_time_seconds)
    print(f"mean={report.mean:.6f} std={report.std:.6f} "
          f"undetected={report.undetected}")
    return EXIT_OK


def cmd_bench(cfg: RunConfig) -> int:
    """Run both heuristics on one region and tabulate detection statistics.

    The CSV holds only reproducible columns so reruns are byte-identical;
    wall-clock times go to bench_times.json and stderr.
    """
    region, grid, graph = _build(cfg)
    cutter = _cutter_for(cfg)
    rows = []
    timings = {}
    for name in ("exptree", "minlatency"):
        sub = RunConfig(**{**cfg.__dict__, "algorithm": name})
        route, wall, _, _ = _plan_route(sub, grid, graph)
        report = sim.monte_carlo(route, grid.centers, region, cutter,
                                 cfg.trials, cfg.seed, name=name)
        rows.append(report)
        timings[name] = {"planning_seconds": wall,
                         "simulation_seconds": report.wall_time_seconds}
        _diag(event="bench", algorithm=name, mean=report.mean,
              planning_seconds=wall)

    ratio = rows[0].mean / rows[1].mean
    lines = ["name,mean,std,undetected,trials,seed"]
    for r in rows:
        lines.append(f"{r.name},{r.mean!r},{r.std!r},{r.undetected},"
                     f"{r.trials},{r.seed}")
    lines.append(f"mean_ratio_exptree_over_minlatency,{ratio!r},,,,")
    _write(cfg.out_dir, "bench.csv", "\n".join(lines) + "\n")
    _write(cfg.out_dir, "bench_times.json", _json_text(timings))
    print(f"exptree_mean={rows[0].mean:.6f} minlatency_mean={rows[1].mean:.6f} "
          f"ratio={ratio:.4f}")
    return EXIT_OK


def cmd_render(cfg: RunConfig, route_path: str | None, target=None) -> int:
    region, grid, graph = _build(cfg)
    route = _load_route(route_path, grid) if route_path else None
    svg = render.render_svg(region, grid, route, target)
    path = _write(cfg.out_dir, "view.svg", svg)
    print(f"wrote {path}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, region_required: bool = True) -> None:
    p.add_argument("--region", required=region_required, help="region JSON file")
    p.add_argument("--cutter", choices=["square", "circle"], default="square")
    p.add_argument("--motion", choices=["rectilinear", "arbitrary"],
                   default="rectilinear",
                   help="square-grid motion model (circle cutter implies triangular)")
    p.add_argument("--out", default=".", help="output directory")


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        region_path=getattr(args, "region", None) or "",
        algorithm=getattr(args, "algorithm", "exptree"),
        cutter=getattr(args, "cutter", "square"),
        motion=getattr(args, "motion", "rectilinear"),
        quota_value=getattr(args, "quota", None),
        budget=getattr(args, "budget", None),
        epsilon=getattr(args, "epsilon", heuristics.DEFAULT_EPSILON),
        trials=getattr(args, "trials", 1000),
        seed=getattr(args, "seed", 0),
        out_dir=getattr(args, "out", "."),
    )


def main(argv: list[str] | None = None) -> int:
    top = argparse.ArgumentParser(prog="mowsearch")
    subs = top.add_subparsers(dest="command", required=True)

    p = subs.add_parser("discretize", help="pixelize a region and dump the grid")
    _add_common(p)

    p = subs.add_parser("plan", help="compute a coverage route or quota tour")
    _add_common(p)
    p.add_argument("--algorithm", default="exptree",
                   choices=["exptree", "minlatency", "expplan", "quota"])
    p.add_argument("--quota", type=float, default=None,
                   help="area quota for --algorithm quota")
    p.add_argument("--budget", type=float, default=None,
                   help="length budget for --algorithm quota")
    p.add_argument("--epsilon", type=float, default=heuristics.DEFAULT_EPSILON)

    p = subs.add_parser("simulate", help="Monte Carlo detection times for a route")
    _add_common(p)
    p.add_argument("--route", required=True, help="route JSON file")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = subs.add_parser("bench", help="compare both heuristics on one region")
    _add_common(p)
    p.add_argument("--epsilon", type=float, default=heuristics.DEFAULT_EPSILON)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = subs.add_parser("render", help="render region, grid, and route to SVG")
    _add_common(p)
    p.add_argument("--route", default=None, help="route JSON file")
    p.add_argument("--target", type=float, nargs=2, default=None,
                   metavar=("X", "Y"))

    p = subs.add_parser("gen-region", help="write a random rectilinear region")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cells", type=int, default=12)
    p.add_argument("--cell-size", type=float, default=3.0)
    p.add_argument("--holes", type=int, default=1)
    p.add_argument("--out", default="region.json", help="output file path")

    args = top.parse_args(argv)
    try:
        if args.command == "gen-region":
            region = regions.random_region(args.seed, cells=args.cells,
                                           cell_size=args.cell_size,
                                           holes=args.holes)
            path = Path(args.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(_json_text(geometry.region_to_json(region)))
            print(f"wrote {path}")
            return EXIT_OK
        cfg = _config(args)
        if args.command == "discretize":
            return cmd_discretize(cfg)
        if args.command == "plan":
            return cmd_plan(cfg)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.route)
        if args.command == "bench":
            return cmd_bench(cfg)
        if args.command == "render":
            return cmd_render(cfg, args.route, args.target)
        raise AssertionError(f"unhandled command {args.command}")
    except RegionError as exc:
        _diag(error="input", field=exc.field, message=str(exc))
        return EXIT_INPUT
    except quota.InfeasibleQuota as exc:
        _diag(error="infeasible", message=str(exc))
        return EXIT_INFEASIBLE
    except ValueError as exc:
        if "disconnected" in str(exc):
            _diag(error="infeasible", message=str(exc))
            return EXIT_INFEASIBLE
        _diag(error="input", message=str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
