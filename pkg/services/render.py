#!/usr/bin/env python3
"""
Static Figure Rendering
SVG snapshot of a formation run: robots, pattern inset, optimal formation,
trajectories, focal point and spanner circles
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle as CirclePatch, Polygon  # noqa: E402

from services.geometry import Point, Triangle, centroid_of, distance, scale_of  # noqa: E402
from services.simulator import SimTrace  # noqa: E402
from services.solver import PointAtInfinity, Solution, spanner_circles  # noqa: E402

logger = logging.getLogger(__name__)

ROBOT_COLORS = ("tab:red", "tab:green", "tab:blue")

# Focal points farther than this many robot scales from the robots are annotated, not drawn
FOCAL_VIEW_LIMIT = 10.0


def _trajectory(R: Triangle, Q: Triangle, trace: Optional[SimTrace], i: int) -> List[Point]:
    if trace is None:
        return [R[i], Q[i]]
    return [record.positions[i] for record in trace.records]


def render_svg(R: Triangle, P: Triangle, solution: Solution, out: Union[str, Path],
               trace: Optional[SimTrace] = None, show_circles: bool = True):
    """
    Write the figure to out as SVG.

    Args:
        R: Initial robot positions
        P: Pattern, drawn in an inset
        solution: solve(R, P)
        out: Destination file
        trace: Simulated run; straight segments R -> Q are drawn when omitted
        show_circles: Draw the spanner circle around each target
    """
    Q = solution.destinations
    plt.rcParams["svg.hashsalt"] = "formation"
    fig, ax = plt.subplots(figsize=(7, 7))
    try:
        ax.add_patch(Polygon(R.as_lists(), closed=True, fill=False, ls="--", color="dimgray", label="Robots R"))
        ax.add_patch(Polygon(Q.as_lists(), closed=True, alpha=0.15, color="navy", label="Formation Q"))

        for i in range(3):
            path = _trajectory(R, Q, trace, i)
            ax.plot([p.x for p in path], [p.y for p in path], color=ROBOT_COLORS[i], lw=1.2, label=f"Robot {i}")
            ax.scatter([R[i].x], [R[i].y], color=ROBOT_COLORS[i], marker="o", zorder=3)
            ax.scatter([Q[i].x], [Q[i].y], color=ROBOT_COLORS[i], marker="s", zorder=3)

        if show_circles and solution.d_star > 0:
            for i, circle in enumerate(spanner_circles(R, P, solution)):
                c = circle.center
                ax.add_patch(CirclePatch((c.x, c.y), circle.radius, fill=False, ls=":",
                                         color=ROBOT_COLORS[i], alpha=0.6))
                ax.scatter([c.x], [c.y], color=ROBOT_COLORS[i], marker="x", alpha=0.6)

        focal = solution.focal
        if isinstance(focal, Point):
            if distance(focal, centroid_of(R)) <= FOCAL_VIEW_LIMIT * scale_of(R):
                ax.scatter([focal.x], [focal.y], color="black", marker="*", s=120, zorder=4, label="Focal point")
            else:
                ax.text(0.02, 0.98, f"focal point ({focal.x:.4g}, {focal.y:.4g})", transform=ax.transAxes,
                        va="top", fontsize=8)
        elif isinstance(focal, PointAtInfinity):
            d = focal.direction
            ax.text(0.02, 0.98, f"focal point at infinity, direction ({d.x:.4g}, {d.y:.4g})",
                    transform=ax.transAxes, va="top", fontsize=8)

        ax.set_aspect("equal")
        ax.autoscale_view()
        ax.set_title(f"d* = {solution.d_star:.6g}" + (" (mirrored)" if solution.mirrored else ""))
        ax.legend(loc="lower left", fontsize=8)

        inset = ax.inset_axes([0.74, 0.74, 0.24, 0.24])
        inset.add_patch(Polygon(P.as_lists(), closed=True, alpha=0.3, color="darkorange"))
        inset.set_aspect("equal")
        inset.autoscale_view()
        inset.set_xticks([])
        inset.set_yticks([])
        inset.set_title("Pattern P", fontsize=8)

        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
        logger.info(f"Figure written to {out}")
    finally:
        plt.close(fig)
