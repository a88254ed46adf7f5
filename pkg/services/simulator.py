#!/usr/bin/env python3
"""
Look-Compute-Move Simulator
Synchronous rounds of oblivious robots: every cycle each robot observes all
positions, recomputes the optimal formation from scratch and moves at most
one step toward its own destination
"""

import csv
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, TextIO, Tuple

from pydantic import BaseModel, ConfigDict, Field

from services.errors import CycleLimitExceeded, DegenerateTriangle
from services.geometry import (
    Point,
    Triangle,
    distance,
    require_nondegenerate,
    scale_of,
)
from services.solver import solve

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("cycle", "robot_index", "x", "y", "dest_x", "dest_y", "remaining")


class SimConfig(BaseModel):
    """Simulation parameters"""
    model_config = ConfigDict(frozen=True)

    step: float = Field(gt=0, description="Largest distance a robot covers in one cycle")
    max_cycles: int = Field(10 ** 6, gt=0)
    similarity_tol: float = Field(1e-9, gt=0)
    arrival_tol: float = Field(1e-12, gt=0, description="Remaining distance (times max(1, scale)) counted as arrived")


@dataclass(frozen=True)
class CycleRecord:
    """Snapshot observed at the start of a cycle and the destinations computed from it"""
    cycle: int
    positions: Triangle
    destinations: Triangle
    travel: float

    def remaining(self) -> Tuple[float, float, float]:
        return tuple(distance(p, q) for p, q in zip(self.positions, self.destinations))


@dataclass(frozen=True)
class SimTrace:
    """
    Complete run history.

    records[0] holds the initial configuration; the last record is the
    terminal one whose destinations were reached. frozen is set when some
    snapshot was too degenerate to solve and the previous destinations were
    reused.
    """
    records: Tuple[CycleRecord, ...]
    frozen: bool
    movement_cycles: int
    path_lengths: Tuple[float, float, float]

    @property
    def final_positions(self) -> Triangle:
        return self.records[-1].positions

    @property
    def initial_destinations(self) -> Triangle:
        return self.records[0].destinations

    def destination_drift(self) -> float:
        """Largest move of any robot's destination between consecutive cycles"""
        drift = 0.0
        for before, after in zip(self.records, self.records[1:]):
            for q0, q1 in zip(before.destinations, after.destinations):
                drift = max(drift, distance(q0, q1))
        return drift


def _advance(positions: Triangle, destinations: Triangle, step: float) -> Triangle:
    moved = []
    for p, q in zip(positions, destinations):
        gap = distance(p, q)
        if gap <= step:
            moved.append(q)
        else:
            k = step / gap
            moved.append(Point(p.x + k * (q.x - p.x), p.y + k * (q.y - p.y)))
    return Triangle(tuple(moved))


def sim_step(positions: Triangle, P: Triangle, step: float) -> Tuple[Triangle, Triangle]:
    """
    One synchronous look-compute-move cycle.

    Returns:
        (new positions, destinations computed from the observed positions)
    """
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    destinations = solve(positions, P).destinations
    return _advance(positions, destinations, step), destinations


def run(R: Triangle, P: Triangle, cfg: SimConfig) -> SimTrace:
    """Cycle until every robot sits on its destination"""
    require_nondegenerate(R, "robots")
    require_nondegenerate(P, "pattern")
    arrival = cfg.arrival_tol * max(1.0, scale_of(R))

    positions = R
    destinations: Optional[Triangle] = None
    records: List[CycleRecord] = []
    paths = [0.0, 0.0, 0.0]
    frozen = False
    cycle = 0

    while True:
        try:
            solution = solve(positions, P)
            destinations = solution.destinations
            travel = solution.d_star
        except DegenerateTriangle as e:
            if destinations is None:
                raise
            if not frozen:
                logger.warning(f"Cycle {cycle}: {e}; keeping destinations from the previous cycle")
            frozen = True
            travel = max(distance(p, q) for p, q in zip(positions, destinations))

        record = CycleRecord(cycle=cycle, positions=positions, destinations=destinations, travel=travel)
        records.append(record)
        if max(record.remaining()) <= arrival:
            break
        if cycle >= cfg.max_cycles:
            raise CycleLimitExceeded(cfg.max_cycles)

        moved = _advance(positions, destinations, cfg.step)
        for i in range(3):
            paths[i] += distance(positions[i], moved[i])
        positions = moved
        cycle += 1

    logger.debug(f"Simulation finished after {cycle} movement cycles (frozen={frozen})")
    return SimTrace(
        records=tuple(records),
        frozen=frozen,
        movement_cycles=cycle,
        path_lengths=tuple(paths),
    )


def trace_rows(trace: SimTrace) -> Iterator[Tuple[int, int, float, float, float, float, float]]:
    """One row per robot per recorded cycle, in TRACE_COLUMNS order"""
    for record in trace.records:
        for i, (p, q) in enumerate(zip(record.positions, record.destinations)):
            yield (record.cycle, i, p.x, p.y, q.x, q.y, distance(p, q))


def write_trace_csv(trace: SimTrace, stream: TextIO):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    writer.writerows(trace_rows(trace))


def expected_cycles(d_star: float, step: float) -> int:
    """Movement cycles needed to cover d_star at step per cycle"""
    return math.ceil(d_star / step) if d_star > 0 else 0
