"""Command-line front end: scenario files in, reports and schedules out.

A scenario is a JSON object declaring one or two chains plus either a
geometric topology (positions and a disk radius, the relation is
derived) or an explicit interference matrix. Scenarios may also carry
an `optimize` section with candidate routes for the grid search.

All emitted JSON is deterministic: keys are sorted, exact rationals are
written as {"num": ..., "den": ...} objects, and any randomness in the
verify corpus flows from the --seed flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .analysis import analyze
from .errors import ConfigurationError, DomainError, SchemaError
from .matching import max_support_set, validate_support_set
from .model import (
    GeometricTopology,
    InterferenceRelation,
    NodeRef,
    PathPair,
    PrimaryPath,
    derive_relation,
    validate_path_rules,
)
from .optimizer import DiskScenario, RouteCandidate, SearchSpace, optimize, routes_from_graph
from .periods import build_matrix, intrinsic_period
from .scheduler import (
    Schedule,
    audit_schedule,
    predicted_throughput,
    schedule_pair_equal,
    schedule_pair_unequal,
    schedule_primary,
)
from .simulator import default_warmup_periods, measure_delay, run
from .verify import DEFAULT_SEED, run_criteria


# ------------------------------------------------------------- utilities


def fraction_dict(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def _expect(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise SchemaError(path, message)


def _as_number(value: Any, path: str) -> float:
    _expect(isinstance(value, (int, float)) and not isinstance(value, bool), path, "expected a number")
    return float(value)


def _as_point(value: Any, path: str) -> tuple[float, float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (float(value), 0.0)
    _expect(
        isinstance(value, list) and len(value) in (1, 2),
        path,
        "expected a number or [x, y] pair",
    )
    coords = [_as_number(c, f"{path}[{k}]") for k, c in enumerate(value)]
    return (coords[0], coords[1] if len(coords) == 2 else 0.0)


# ------------------------------------------------------------- scenario


@dataclass
class OptimizeConfig:
    disk: DiskScenario
    routes1: tuple[RouteCandidate, ...]
    routes2: tuple[RouteCandidate, ...]
    period_range1: tuple[int, int] | None
    period_range2: tuple[int, int] | None
    max_traversals: int


@dataclass
class Scenario:
    pair: PathPair
    topology: GeometricTopology | None
    optimize_config: OptimizeConfig | None


def _parse_paths(data: dict) -> tuple[PrimaryPath, PrimaryPath | None]:
    raw = data.get("paths")
    _expect(isinstance(raw, list) and raw, "$.paths", "expected a non-empty list of path declarations")
    _expect(len(raw) <= 2, "$.paths", "at most two paths are supported")
    parsed = []
    for k, entry in enumerate(raw):
        path_str = f"$.paths[{k}]"
        _expect(isinstance(entry, dict), path_str, "expected an object")
        pid = entry.get("id")
        n = entry.get("n_senders")
        _expect(isinstance(pid, int), f"{path_str}.id", "expected an integer path id")
        _expect(
            isinstance(n, int) and n >= 1,
            f"{path_str}.n_senders",
            "expected a positive integer",
        )
        parsed.append(PrimaryPath(id=pid, n_senders=n))
    ids = [p.id for p in parsed]
    _expect(ids == [1] or ids == [1, 2], "$.paths", "path ids must be [1] or [1, 2]")
    return parsed[0], parsed[1] if len(parsed) == 2 else None


def _parse_topology(raw: Any, paths: Sequence[PrimaryPath]) -> GeometricTopology:
    _expect(isinstance(raw, dict), "$.topology", "expected an object")
    radius = raw.get("interference_radius")
    _expect(
        isinstance(radius, (int, float)) and not isinstance(radius, bool) and radius >= 0,
        "$.topology.interference_radius",
        "expected a number >= 0",
    )
    half_duplex = raw.get("half_duplex", True)
    _expect(
        isinstance(half_duplex, bool), "$.topology.half_duplex", "expected a boolean"
    )
    positions_raw = raw.get("positions")
    _expect(isinstance(positions_raw, dict), "$.topology.positions", "expected an object keyed by path id")
    positions: dict[tuple[int, int], tuple[float, float]] = {}
    for path in paths:
        key = str(path.id)
        row = positions_raw.get(key)
        row_path = f"$.topology.positions.{key}"
        _expect(isinstance(row, list), row_path, "expected a list of points")
        _expect(
            len(row) == path.n_senders + 1,
            row_path,
            f"path {path.id} declares {path.n_senders} senders, so "
            f"{path.n_senders + 1} points are needed (senders plus destination), "
            f"got {len(row)}",
        )
        for seq, value in enumerate(row, start=1):
            positions[(path.id, seq)] = _as_point(value, f"{row_path}[{seq - 1}]")
    extra = set(positions_raw) - {str(p.id) for p in paths}
    _expect(not extra, "$.topology.positions", f"unknown path keys {sorted(extra)}")
    return GeometricTopology(
        positions, interference_radius=float(radius), half_duplex=half_duplex
    )


def _parse_relation(raw: Any, paths: Sequence[PrimaryPath]) -> InterferenceRelation:
    _expect(isinstance(raw, dict), "$.relation", "expected an object")
    matrix = raw.get("matrix")
    order: list[NodeRef] = []
    for path in paths:
        order.extend(NodeRef(path.id, seq) for seq in range(1, path.n_senders + 1))
    n = len(order)
    _expect(
        isinstance(matrix, list) and len(matrix) == n,
        "$.relation.matrix",
        f"expected {n} rows (senders of path 1 then path 2, in order)",
    )
    for i, row in enumerate(matrix):
        _expect(
            isinstance(row, list) and len(row) == n,
            f"$.relation.matrix[{i}]",
            f"expected {n} entries",
        )
        for j, cell in enumerate(row):
            _expect(cell in (0, 1), f"$.relation.matrix[{i}][{j}]", "expected 0 or 1")
    try:
        return InterferenceRelation.from_matrix(order, matrix)
    except DomainError as exc:
        raise SchemaError("$.relation.matrix", str(exc)) from None


def _parse_route_list(raw: Any, path: str) -> tuple[RouteCandidate, ...]:
    _expect(isinstance(raw, list) and raw, path, "expected a non-empty list of routes")
    routes = []
    for k, points in enumerate(raw):
        route_path = f"{path}[{k}]"
        _expect(
            isinstance(points, list) and len(points) >= 2,
            route_path,
            "expected a list of at least two points (senders plus destination)",
        )
        routes.append(
            RouteCandidate(
                points=tuple(
                    _as_point(v, f"{route_path}[{i}]") for i, v in enumerate(points)
                ),
                label=f"route{k}",
            )
        )
    return tuple(routes)


def _parse_graph_routes(raw: Any, which: int) -> tuple[RouteCandidate, ...]:
    base = "$.optimize.graph"
    _expect(isinstance(raw, dict), base, "expected an object")
    vertices = raw.get("vertices")
    _expect(isinstance(vertices, dict) and vertices, f"{base}.vertices", "expected an object of vertex positions")
    positions = {
        name: _as_point(value, f"{base}.vertices.{name}")
        for name, value in vertices.items()
    }
    edges = raw.get("edges")
    _expect(isinstance(edges, list), f"{base}.edges", "expected a list of [a, b] pairs")
    adjacency: dict[str, list[str]] = {name: [] for name in positions}
    for k, edge in enumerate(edges):
        _expect(
            isinstance(edge, list) and len(edge) == 2,
            f"{base}.edges[{k}]",
            "expected an [a, b] pair",
        )
        a, b = edge
        for v in (a, b):
            _expect(v in positions, f"{base}.edges[{k}]", f"unknown vertex {v!r}")
        adjacency[a].append(b)
        adjacency[b].append(a)
    spec = raw.get(f"route{which}")
    spec_path = f"{base}.route{which}"
    _expect(isinstance(spec, dict), spec_path, "expected an object with source/destination/max_hops")
    source = spec.get("source")
    destination = spec.get("destination")
    max_hops = spec.get("max_hops", 8)
    _expect(isinstance(source, str) and source in positions, f"{spec_path}.source", "expected a known vertex name")
    _expect(
        isinstance(destination, str) and destination in positions,
        f"{spec_path}.destination",
        "expected a known vertex name",
    )
    _expect(
        isinstance(max_hops, int) and max_hops >= 1,
        f"{spec_path}.max_hops",
        "expected an integer >= 1",
    )
    routes = routes_from_graph(adjacency, positions, source, destination, max_hops)
    _expect(
        bool(routes),
        spec_path,
        f"no simple path from {source!r} to {destination!r} within {max_hops} hops",
    )
    return routes


def _parse_period_range(raw: Any, path: str) -> tuple[int, int] | None:
    if raw is None:
        return None
    _expect(
        isinstance(raw, list)
        and len(raw) == 2
        and all(isinstance(v, int) and v >= 1 for v in raw)
        and raw[0] <= raw[1],
        path,
        "expected [lo, hi] with 1 <= lo <= hi",
    )
    return (raw[0], raw[1])


def _parse_optimize(raw: Any, topology: GeometricTopology | None) -> OptimizeConfig:
    base = "$.optimize"
    _expect(isinstance(raw, dict), base, "expected an object")
    radius = raw.get("interference_radius")
    if radius is None and topology is not None:
        radius = topology.interference_radius
    _expect(
        isinstance(radius, (int, float)) and not isinstance(radius, bool) and radius >= 0,
        f"{base}.interference_radius",
        "expected a number >= 0 (may be inherited from $.topology)",
    )
    half_duplex = raw.get("half_duplex", topology.half_duplex if topology else True)
    _expect(isinstance(half_duplex, bool), f"{base}.half_duplex", "expected a boolean")
    if "graph" in raw:
        _expect(
            "routes1" not in raw and "routes2" not in raw,
            base,
            "give either a graph or fixed routes, not both",
        )
        routes1 = _parse_graph_routes(raw["graph"], 1)
        routes2 = _parse_graph_routes(raw["graph"], 2)
    else:
        _expect(
            "routes1" in raw and "routes2" in raw,
            base,
            "expected routes1 and routes2 (or a graph section)",
        )
        routes1 = _parse_route_list(raw["routes1"], f"{base}.routes1")
        routes2 = _parse_route_list(raw["routes2"], f"{base}.routes2")
    max_traversals = raw.get("max_traversals", 4)
    _expect(
        isinstance(max_traversals, int) and max_traversals >= 1,
        f"{base}.max_traversals",
        "expected an integer >= 1",
    )
    return OptimizeConfig(
        disk=DiskScenario(interference_radius=float(radius), half_duplex=half_duplex),
        routes1=routes1,
        routes2=routes2,
        period_range1=_parse_period_range(raw.get("period_range1"), f"{base}.period_range1"),
        period_range2=_parse_period_range(raw.get("period_range2"), f"{base}.period_range2"),
        max_traversals=max_traversals,
    )


def parse_scenario(data: Any) -> Scenario:
    _expect(isinstance(data, dict), "$", "scenario must be a JSON object")
    path1, path2 = _parse_paths(data)
    paths = [p for p in (path1, path2) if p is not None]
    has_topology = "topology" in data
    has_relation = "relation" in data
    _expect(
        has_topology != has_relation,
        "$",
        "exactly one of topology or relation must be present",
    )
    topology = None
    if has_topology:
        topology = _parse_topology(data["topology"], paths)
        skeleton = PathPair(path1=path1, path2=path2, relation=InterferenceRelation())
        relation = derive_relation(topology, skeleton)
    else:
        relation = _parse_relation(data["relation"], paths)
    pair = PathPair(path1=path1, path2=path2, relation=relation)
    config = None
    if "optimize" in data:
        config = _parse_optimize(data["optimize"], topology)
    return Scenario(pair=pair, topology=topology, optimize_config=config)


def load_scenario(filename: str) -> Scenario:
    try:
        with open(filename, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return parse_scenario(data)


# ------------------------------------------------------------- rendering


def _emit(payload: Any, out) -> None:
    json.dump(payload, out, indent=2, sort_keys=True)
    out.write("\n")


def schedule_timeline(pair: PathPair, schedule: Schedule) -> str:
    """Rows are senders, columns beats; X marks an activated sender."""
    category_codes = {"joint": "J", "path1-only": "1", "path2-only": "2"}
    lines = []
    header = "".join(
        category_codes.get(beat.category, "?") for beat in schedule.beats
    )
    lines.append(f"{'beat category':>10}  {header}")
    for path_id in sorted(schedule.path_periods):
        path = pair.path(path_id)
        active_by_seq: dict[int, set[int]] = {
            seq: set() for seq in range(1, path.n_senders + 1)
        }
        for index, beat in enumerate(schedule.beats):
            act = beat.activation_for(path_id)
            if act is None:
                continue
            for seq in act.members:
                active_by_seq[seq].add(index)
        for seq in range(1, path.n_senders + 1):
            row = "".join(
                "X" if index in active_by_seq[seq] else "."
                for index in range(schedule.period)
            )
            lines.append(f"{f'n{path_id}.{seq}':>10}  {row}")
    return "\n".join(lines)


def spacetime_diagram(pair: PathPair, trace: list[dict]) -> str:
    """Rows are nodes plus destinations, columns beats; a digit is the
    final digit of the block serial leaving that node in that beat."""
    beats = len(trace)
    rows: dict[str, list[str]] = {}
    for path in pair.paths:
        for seq in range(1, path.n_senders + 1):
            rows[f"n{path.id}.{seq}"] = ["."] * beats
        rows[f"dest{path.id}"] = ["."] * beats
    for index, event in enumerate(trace):
        for move in event["moves"]:
            serial_digit = move["block"].split("b", 1)[1][-1]
            origin = move["from"]
            if origin in rows:
                rows[origin][index] = serial_digit
            if move["to"].startswith("dest"):
                rows[move["to"]][index] = serial_digit
    lines = [f"{name:>10}  {''.join(cells)}" for name, cells in rows.items()]
    return "\n".join(lines)


def support_grid(matrix: list[list[int]], witness) -> str:
    chosen = set(witness)
    lines = []
    for i, row in enumerate(matrix, start=1):
        cells = []
        for j, value in enumerate(row, start=1):
            mark = "*" if (i, j) in chosen else (str(value))
            cells.append(mark)
        lines.append(" ".join(cells))
    return "\n".join(lines)


# ------------------------------------------------------------- commands


def _build_schedule(scenario: Scenario, args) -> Schedule:
    pair = scenario.pair
    mode = args.mode
    if mode == "auto":
        mode = "equal" if pair.has_pair() else "primary"
    if mode == "primary":
        return schedule_primary(pair, args.path, args.spacing1)
    if mode == "equal":
        spacing1 = args.spacing1 or intrinsic_period(pair, 1)
        spacing2 = args.spacing2 or intrinsic_period(pair, 2)
        return schedule_pair_equal(pair, spacing1, spacing2, args.traversals)
    spacing1 = args.spacing1 or intrinsic_period(pair, 1)
    spacing2 = args.spacing2 or intrinsic_period(pair, 2)
    return schedule_pair_unequal(
        pair, spacing1, spacing2, args.traversals1, args.traversals2
    )


def cmd_analyze(args, out) -> int:
    scenario = load_scenario(args.scenario)
    pair = scenario.pair
    payload: dict[str, Any] = {"paths": {}}
    for path in pair.paths:
        nodes = pair.path_nodes(path.id)
        report = analyze(pair, nodes)
        rules = validate_path_rules(pair, path.id)
        payload["paths"][str(path.id)] = {
            "n_senders": path.n_senders,
            "interference_intensity": report.interference_intensity,
            "interference_witness": [str(n) for n in report.interference_witness],
            "concurrency_intensity": report.concurrency_intensity,
            "concurrency_witness": [str(n) for n in report.concurrency_witness],
            "intrinsic_interference_degree": report.intrinsic_interference_degree,
            "intrinsic_concurrency_degree": report.intrinsic_concurrency_degree,
            "dominant": report.dominant,
            "monotonicity_rules_hold": rules.ok,
            "intrinsic_period": intrinsic_period(pair, path.id),
        }
    if pair.has_pair():
        joint = analyze(pair)
        payload["joint"] = {
            "interference_intensity": joint.interference_intensity,
            "interference_witness": [str(n) for n in joint.interference_witness],
            "concurrency_intensity": joint.concurrency_intensity,
        }
    _emit(payload, out)
    return 0


def cmd_matrix(args, out) -> int:
    scenario = load_scenario(args.scenario)
    pair = scenario.pair
    pair.require_pair()
    spacing1 = args.spacing1 or intrinsic_period(pair, 1)
    spacing2 = args.spacing2 or intrinsic_period(pair, 2)
    matrix = build_matrix(pair, spacing1, spacing2)
    payload = {
        "spacing1": spacing1,
        "spacing2": spacing2,
        "rows": matrix.as_lists(),
    }
    _emit(payload, out)
    for row in matrix.as_lists():
        out.write(" ".join(str(v) for v in row) + "\n")
    return 0


def _read_matrix_input(filename: str) -> list[list[int]]:
    if filename == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(filename, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ConfigurationError(f"cannot read matrix file: {exc}") from None
    stripped = text.strip()
    if not stripped:
        raise SchemaError("$", "matrix input is empty")
    if stripped[0] in "[{":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON matrix: {exc}") from None
        if isinstance(data, dict):
            data = data.get("rows")
        _expect(isinstance(data, list) and data, "$", "expected a list of rows")
        for i, row in enumerate(data):
            _expect(
                isinstance(row, list) and all(v in (0, 1) for v in row),
                f"$[{i}]",
                "expected a row of 0/1 entries",
            )
        return [list(row) for row in data]
    rows = []
    for line in stripped.splitlines():
        line = line.strip().replace(" ", "")
        if not line:
            continue
        if not set(line) <= {"0", "1"}:
            raise SchemaError("$", f"grid lines must be 0/1 characters, got {line!r}")
        rows.append([int(c) for c in line])
    _expect(bool(rows), "$", "no grid rows found")
    _expect(
        len({len(r) for r in rows}) == 1, "$", "grid rows have unequal lengths"
    )
    return rows


def cmd_support(args, out) -> int:
    matrix = _read_matrix_input(args.matrix)
    witness, size = max_support_set(matrix)
    ok, problems = validate_support_set(matrix, witness)
    payload = {
        "support_size": size,
        "witness": [list(e) for e in witness],
        "witness_valid": ok and not problems,
    }
    _emit(payload, out)
    out.write(support_grid(matrix, witness) + "\n")
    return 0


def cmd_schedule(args, out) -> int:
    scenario = load_scenario(args.scenario)
    pair = scenario.pair
    schedule = _build_schedule(scenario, args)
    audit = audit_schedule(pair, schedule)
    payload = {
        "schedule": schedule.to_dict(),
        "predicted_throughput": fraction_dict(predicted_throughput(schedule)),
        "audit_ok": audit.ok,
        "audit_problems": audit.problems,
    }
    _emit(payload, out)
    out.write(schedule_timeline(pair, schedule) + "\n")
    return 0 if audit.ok else 1


def cmd_simulate(args, out) -> int:
    scenario = load_scenario(args.scenario)
    pair = scenario.pair
    schedule = _build_schedule(scenario, args)
    report = run(
        pair,
        schedule,
        n_periods=args.periods,
        warmup_periods=args.warmup,
        collect_trace=args.trace,
    )
    payload = {
        "window_start": report.window_start,
        "window_beats": report.window_beats,
        "periods_measured": report.periods_measured,
        "delivered": {str(k): v for k, v in report.delivered.items()},
        "per_path_throughput": {
            str(k): fraction_dict(v) for k, v in report.per_path_throughput.items()
        },
        "measured_throughput": fraction_dict(report.measured_throughput),
        "predicted_throughput": fraction_dict(predicted_throughput(schedule)),
        "delays": {str(k): v for k, v in report.delays.items()},
        "interference_violations": report.violations,
        "violation_examples": report.violation_examples,
        "max_buffer_depth": report.max_buffer_depth,
    }
    _emit(payload, out)
    if args.trace and report.trace is not None:
        for event in report.trace:
            out.write(json.dumps(event, sort_keys=True) + "\n")
        out.write(spacetime_diagram(pair, report.trace) + "\n")
    return 0 if report.ok else 1


def cmd_optimize(args, out) -> int:
    scenario = load_scenario(args.scenario)
    config = scenario.optimize_config
    if config is None:
        raise ConfigurationError(
            "scenario has no optimize section (routes or graph needed)"
        )
    space = SearchSpace(
        routes1=config.routes1,
        routes2=config.routes2,
        period_range1=args.period_range1 or config.period_range1,
        period_range2=args.period_range2 or config.period_range2,
        max_traversals=args.max_traversals or config.max_traversals,
    )
    result = optimize(config.disk, space)
    payload = {
        "best": {
            "routes": [
                {"index": result.best_route_indices[0], "label": result.best_routes[0].label},
                {"index": result.best_route_indices[1], "label": result.best_routes[1].label},
            ],
            "spacing1": result.best_period1,
            "spacing2": result.best_period2,
            "traversals1": result.best_traversals1,
            "traversals2": result.best_traversals2,
            "support_size": result.best_support_size,
            "throughput": fraction_dict(result.best_throughput),
            "period": result.schedule.period,
        },
        "schedule": result.schedule.to_dict(),
        "search_log": [
            {
                "route1": c.route1,
                "route2": c.route2,
                "spacing1": c.period1,
                "spacing2": c.period2,
                "traversals1": c.traversals1,
                "traversals2": c.traversals2,
                "support_size": c.support_size,
                "period": c.period,
                "throughput": None if c.throughput is None else fraction_dict(c.throughput),
                "note": c.note,
            }
            for c in result.search_log
        ],
    }
    _emit(payload, out)
    return 0


def cmd_verify(args, out) -> int:
    numbers = None
    if args.only:
        try:
            numbers = sorted({int(v) for v in args.only.split(",")})
        except ValueError:
            raise ConfigurationError(
                f"--only expects comma-separated check numbers, got {args.only!r}"
            ) from None
    results = run_criteria(seed=args.seed, numbers=numbers, instances=args.instances)
    for result in results:
        out.write(result.line() + "\n")
    failed = [r for r in results if not r.passed]
    out.write(
        f"{len(results) - len(failed)}/{len(results)} checks passed "
        f"(seed {args.seed})\n"
    )
    return 1 if failed else 0


def cmd_delay(args, out) -> int:
    scenario = load_scenario(args.scenario)
    schedule = _build_schedule(scenario, args)
    delays = measure_delay(scenario.pair, schedule, args.blocks)
    payload = {
        "blocks": args.blocks,
        "delays": {str(k): v for k, v in delays.items()},
    }
    _emit(payload, out)
    return 0


# ------------------------------------------------------------- dispatch


def _add_schedule_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=("auto", "primary", "equal", "unequal"),
        default="auto",
        help="schedule construction (auto: primary for one chain, equal for two)",
    )
    parser.add_argument("--path", type=int, default=1, help="chain id for primary mode")
    parser.add_argument(
        "--spacing1", type=int, default=None, help="phase spacing of path 1 (default: intrinsic)"
    )
    parser.add_argument(
        "--spacing2", type=int, default=None, help="phase spacing of path 2 (default: intrinsic)"
    )
    parser.add_argument(
        "--traversals", type=int, default=1, help="traversals per period in equal mode"
    )
    parser.add_argument(
        "--traversals1", type=int, default=1, help="path-1 traversals in unequal mode"
    )
    parser.add_argument(
        "--traversals2", type=int, default=1, help="path-2 traversals in unequal mode"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beatsched",
        description=(
            "Interference-free beat scheduling for chains of relaying "
            "senders: structural analysis, schedule synthesis, exact "
            "simulation, and exhaustive search."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="intensities, degrees, and intrinsic periods")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("matrix", help="joint phase concurrency matrix of a pair")
    p.add_argument("scenario")
    p.add_argument("--spacing1", type=int, default=None)
    p.add_argument("--spacing2", type=int, default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("support", help="maximum support set of a 0/1 matrix")
    p.add_argument("matrix", help="JSON file, ASCII grid file, or - for stdin")
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("schedule", help="synthesize a periodic schedule")
    p.add_argument("scenario")
    _add_schedule_flags(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="run a schedule beat by beat and measure")
    p.add_argument("scenario")
    _add_schedule_flags(p)
    p.add_argument("--periods", type=int, default=5, help="measured whole periods")
    p.add_argument(
        "--warmup", type=int, default=None, help="warmup periods (default: safe bound)"
    )
    p.add_argument("--trace", action="store_true", help="emit per-beat events and a space-time diagram")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("delay", help="end-to-end delays of the first blocks")
    p.add_argument("scenario")
    _add_schedule_flags(p)
    p.add_argument("--blocks", type=int, default=1, help="blocks to track per path")
    p.set_defaults(func=cmd_delay)

    p = sub.add_parser("optimize", help="exhaustive route/spacing/traversal search")
    p.add_argument("scenario")
    p.add_argument("--max-traversals", type=int, default=None, dest="max_traversals")
    p.add_argument(
        "--period-range1", type=int, nargs=2, default=None, dest="period_range1",
        metavar=("LO", "HI"),
    )
    p.add_argument(
        "--period-range2", type=int, nargs=2, default=None, dest="period_range2",
        metavar=("LO", "HI"),
    )
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument(
        "--instances",
        type=int,
        default=None,
        help="randomized corpus size (checks keep their contractual minimums)",
    )
    p.add_argument("--only", default=None, help="comma-separated check numbers")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (SchemaError, ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
