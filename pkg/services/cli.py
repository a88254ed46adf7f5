#!/usr/bin/env python3
"""
Formation Command-Line Front End
solve, metric, simulate, verify and presets subcommands over JSON scenario files
"""

import argparse
import json
import logging
import math
import os
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add repository root to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.pattern_presets import list_pattern_presets  # noqa: E402
from services.errors import FormationError, ScenarioError  # noqa: E402
from services.geometry import distance, is_similar, scale_of  # noqa: E402
from services.instances import instances  # noqa: E402
from services.metric import tau  # noqa: E402
from services.oracle import oracle_minmax  # noqa: E402
from services.scenario import load_scenario, load_triangle, scenario_triangles  # noqa: E402
from services.settings import Settings, reload_settings  # noqa: E402
from services.simulator import SimConfig, run, write_trace_csv  # noqa: E402
from services.solver import PointAtInfinity, Solution, rigid_candidates, solve  # noqa: E402

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12

EXIT_VERIFY_FAILED = 5


def _num(x: float) -> float:
    """Round to SIGNIFICANT_DIGITS; -0.0 becomes 0.0"""
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}") + 0.0


def _pair(x: float, y: float) -> List[float]:
    return [_num(x), _num(y)]


def _dump(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2)


def solution_document(solution: Solution) -> Dict[str, Any]:
    """JSON-ready view of a solution in the caller's robot order"""
    focal = solution.focal
    if focal is None:
        focal_doc = None
    elif isinstance(focal, PointAtInfinity):
        focal_doc = {"at_infinity": _pair(focal.direction.x, focal.direction.y)}
    else:
        focal_doc = _pair(focal.x, focal.y)

    return {
        "d_star": _num(solution.d_star),
        "permutation": list(solution.permutation.mapping),
        "mirrored": solution.mirrored,
        "destinations": [_pair(q.x, q.y) for q in solution.destinations],
        "targets": [_pair(t.x, t.y) for t in solution.rigid.targets],
        "focal": focal_doc,
        "travel_per_robot": [_num(d) for d in solution.rigid.per_robot],
    }


def _tolerance(args: argparse.Namespace, settings: Settings, default: float) -> float:
    if args.tolerance is not None:
        return args.tolerance
    if settings.tolerance_override is not None:
        return settings.tolerance_override
    return default


def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    scenario = load_scenario(args.scenario)
    R, P = scenario_triangles(scenario)
    solution = solve(R, P)

    tol = _tolerance(args, settings, settings.tolerances.similarity)
    if not is_similar(solution.destinations, P, tol):
        logger.warning(f"Destinations are not similar to the pattern within {tol}")

    logger.info(f"Solved: d*={solution.d_star:.12g} mirrored={solution.mirrored}")
    print(_dump(solution_document(solution)))
    return 0


def cmd_metric(args: argparse.Namespace, settings: Settings) -> int:
    A = load_triangle(args.triangle_a)
    B = load_triangle(args.triangle_b)
    value = tau(A, B)

    tol = _tolerance(args, settings, settings.tolerances.similarity)
    logger.info(f"tau={value:.12g} ({'similar' if value <= tol else 'not similar'} at {tol})")
    print(f"{value:.12f}")
    return 0


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    scenario = load_scenario(args.scenario)
    R, P = scenario_triangles(scenario)
    section = scenario.sim
    step = args.step if args.step is not None else (section.step if section else None)
    if step is None:
        raise ScenarioError("no step given: pass --step or set sim.step in the scenario")
    max_cycles = section.max_cycles if section and section.max_cycles else settings.simulation.max_cycles

    cfg = SimConfig(
        step=step,
        max_cycles=max_cycles,
        similarity_tol=_tolerance(args, settings, settings.tolerances.similarity),
        arrival_tol=settings.simulation.arrival_tol,
    )
    trace = run(R, P, cfg)
    logger.info(f"Simulation converged in {trace.movement_cycles} cycles, "
                f"destination drift {trace.destination_drift():.3g}")
    if not is_similar(trace.final_positions, P, cfg.similarity_tol):
        logger.warning(f"Final formation is not similar to the pattern within {cfg.similarity_tol}")

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as f:
            write_trace_csv(trace, f)
        logger.info(f"Trace written to {args.csv}")
    else:
        write_trace_csv(trace, sys.stdout)

    if args.svg:
        # Imported here so matplotlib is only loaded when a figure is requested
        from services.render import render_svg
        render_svg(R, P, solve(R, P), args.svg, trace=trace)
    return 0


def verify_report(n: int, seed: int, settings: Settings, tolerance: Optional[float] = None) -> Dict[str, Any]:
    """
    Compare solver and oracle on n seeded random instances.

    Counts equal-travel, similarity and assignment violations alongside the
    largest relative solver/oracle discrepancy.
    """
    tol = settings.tolerances
    discrepancy_tol = tolerance if tolerance is not None else tol.discrepancy
    worst = 0.0
    equal_travel = similarity = assignment = 0
    started = time.perf_counter()

    for index, (R, P) in enumerate(instances(n, seed, settings.verify.min_angle)):
        scale = scale_of(R)
        solution = solve(R, P)
        oracle = oracle_minmax(R, P, settings.oracle)

        denom = max(solution.d_star, oracle.d_star_approx)
        if denom > 0:
            worst = max(worst, abs(solution.d_star - oracle.d_star_approx) / denom)

        travels = [distance(r, q) for r, q in zip(R, solution.destinations)]
        if max(travels) - min(travels) > tol.equal_travel * max(1.0, scale):
            equal_travel += 1
        if not is_similar(solution.destinations, P, tol.similarity):
            similarity += 1
        best_rigid = min(rigid.travel for _, _, rigid in rigid_candidates(R, P))
        if solution.d_star > best_rigid + tol.assignment_slack * scale:
            assignment += 1

        if (index + 1) % 100 == 0:
            logger.info(f"Verified {index + 1}/{n} instances, worst discrepancy {worst:.3g}")

    elapsed = time.perf_counter() - started
    logger.info(f"Verified {n} instances in {elapsed:.1f}s ({elapsed / n:.3f}s each)")

    passed = worst <= discrepancy_tol and equal_travel == 0 and similarity == 0 and assignment == 0
    return {
        "instances": n,
        "seed": seed,
        "max_relative_discrepancy": _num(worst),
        "equal_travel_violations": equal_travel,
        "similarity_violations": similarity,
        "assignment_violations": assignment,
        "tolerance": _num(discrepancy_tol),
        "passed": passed,
    }


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    n = args.instances if args.instances is not None else settings.verify.instances
    seed = args.seed if args.seed is not None else settings.verify.seed
    tolerance = args.tolerance if args.tolerance is not None else settings.tolerance_override

    report = verify_report(n, seed, settings, tolerance)
    print(_dump(report))
    if not report["passed"]:
        logger.error(f"Verification failed: {report}")
        return EXIT_VERIFY_FAILED
    return 0


def cmd_presets(args: argparse.Namespace, settings: Settings) -> int:
    print(_dump(list_pattern_presets()))
    return 0


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}")
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Config TOML (default: config/formation.toml)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Override log level")
    common.add_argument("--tolerance", type=_positive_float,
                        help="Similarity tolerance (solve, metric, simulate) or discrepancy bound (verify)")

    parser = argparse.ArgumentParser(prog="formation", description="Optimal three-robot formation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="Solve a scenario and print the solution JSON")
    p.add_argument("scenario", help="Path to the scenario JSON file")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("metric", parents=[common], help="Print the tau distance between two triangles")
    p.add_argument("triangle_a", help="Triangle file or preset file")
    p.add_argument("triangle_b", help="Triangle file or preset file")
    p.set_defaults(handler=cmd_metric)

    p = sub.add_parser("simulate", parents=[common], help="Run look-compute-move cycles and write a CSV trace")
    p.add_argument("scenario", help="Path to the scenario JSON file")
    p.add_argument("--step", type=_positive_float, help="Distance a robot moves per cycle")
    p.add_argument("--csv", help="Trace output (default: stdout)")
    p.add_argument("--svg", help="Also render a figure to this SVG file")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="Check the solver against the brute-force oracle")
    p.add_argument("--instances", type=_positive_int, help="Number of random instances")
    p.add_argument("--seed", type=int, help="Random seed")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("presets", parents=[common], help="List named patterns")
    p.set_defaults(handler=cmd_presets)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        settings = reload_settings(args.config)
    except FormationError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    # Configure logging
    logging.basicConfig(
        level=args.log_level or settings.logging.level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        return args.handler(args, settings)
    except FormationError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
