#!/usr/bin/env python3
"""
Brute-Force Optimality Oracle
Searches similarity transforms of the pattern directly for the smallest
maximum travel, independently of the analytic solver
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from services.geometry import (
    Circle,
    Permutation3,
    Point,
    Triangle,
    require_nondegenerate,
    scale_of,
)

logger = logging.getLogger(__name__)


class OracleGrid(BaseModel):
    """Search resolution for oracle_minmax"""
    model_config = ConfigDict(frozen=True)

    theta_cells: int = Field(72, gt=0)
    scale_cells: int = Field(40, gt=0)
    refine_rounds: int = Field(12, ge=0)
    refine_points: int = Field(10, ge=2)
    tol: float = Field(1e-8, gt=0)
    window_factor: float = Field(4.0, gt=1.0)
    max_widenings: int = Field(6, ge=0)
    # Edge hits during refinement, each doubling the local bracket
    max_expansions: int = Field(64, ge=0)


@dataclass(frozen=True)
class SimilarityTransform:
    """q = scale * Rot(theta) * p + translation"""
    theta: float
    scale: float
    translation: Point


@dataclass(frozen=True)
class OracleResult:
    d_star_approx: float
    best_transform: SimilarityTransform
    permutation: Permutation3
    mirrored: bool


def _enclosing(w0, w1, w2) -> Tuple[np.ndarray, np.ndarray]:
    """
    Smallest enclosing circles of point triples, elementwise over arrays.

    Right or obtuse triples use the diameter circle of the longest side,
    acute ones the circumcircle. Points are complex numbers.
    """
    w0, w1, w2 = np.broadcast_arrays(
        np.asarray(w0, dtype=complex), np.asarray(w1, dtype=complex), np.asarray(w2, dtype=complex)
    )
    sides = np.stack([np.abs(w1 - w2) ** 2, np.abs(w2 - w0) ** 2, np.abs(w0 - w1) ** 2])
    longest = np.argmax(sides, axis=0)
    lmax = np.max(sides, axis=0)
    obtuse = lmax >= sides.sum(axis=0) - lmax

    mids = np.stack([(w1 + w2) / 2, (w2 + w0) / 2, (w0 + w1) / 2])
    mid = np.take_along_axis(mids, np.expand_dims(longest, 0), axis=0)[0]

    a = w1 - w0
    b = w2 - w0
    with np.errstate(all="ignore"):
        d = 2.0 * (a.real * b.imag - a.imag * b.real)
        ux = (b.imag * np.abs(a) ** 2 - a.imag * np.abs(b) ** 2) / d
        uy = (a.real * np.abs(b) ** 2 - b.real * np.abs(a) ** 2) / d
        circumcenter = w0 + (ux + 1j * uy)

    center = np.where(obtuse, mid, circumcenter)
    radius = np.maximum(np.maximum(np.abs(w0 - center), np.abs(w1 - center)), np.abs(w2 - center))
    return center, radius


def min_enclosing_circle_3(a: Point, b: Point, c: Point) -> Circle:
    """Smallest circle containing three points (coincident points allowed)"""
    center, radius = _enclosing(a.as_complex(), b.as_complex(), c.as_complex())
    return Circle(Point.from_complex(complex(center)), float(radius))


def _residual_circle(zr: np.ndarray, zp: np.ndarray, a) -> Tuple[np.ndarray, np.ndarray]:
    """Enclosing circle of residuals r_i - a p_i, elementwise over multipliers a"""
    return _enclosing(zr[0] - a * zp[0], zr[1] - a * zp[1], zr[2] - a * zp[2])


def _evaluate(zr: np.ndarray, zp: np.ndarray, theta, log_scale) -> Tuple[np.ndarray, np.ndarray]:
    """Enclosing circle of residuals r_i - s Rot(theta) p_i for every grid point"""
    return _residual_circle(zr, zp, np.exp(log_scale + 1j * theta))


def _coarse(zr, zp, grid: OracleGrid, lo: float, hi: float):
    thetas = 2.0 * math.pi * np.arange(grid.theta_cells) / grid.theta_cells
    logs = np.linspace(lo, hi, grid.scale_cells + 1)
    T, S = np.meshgrid(thetas, logs, indexing="ij")
    _, radius = _evaluate(zr, zp, T, S)
    ti, si = np.unravel_index(int(np.argmin(radius)), radius.shape)
    return float(thetas[ti]), float(logs[si]), float(radius[ti, si]), int(si)


def _best_imag(zr, zp, xs: np.ndarray, y: float, width: float, grid: OracleGrid,
               tol_abs: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    For every real part in xs, the imaginary part of a minimising the radius.

    Each row is a one-dimensional convex search. An interior grid minimum
    brackets the minimiser between its neighbours; a minimum on the edge
    means it lies further out, so the row re-centres there at double width.
    """
    k = grid.refine_points
    offsets = np.linspace(-1.0, 1.0, 2 * k + 1)
    rows = np.arange(xs.size)
    centers = np.full(xs.size, y)
    widths = np.full(xs.size, width)
    values = np.full(xs.size, np.inf)
    for _ in range(grid.refine_rounds + grid.max_expansions):
        ys = centers[:, None] + widths[:, None] * offsets[None, :]
        _, radius = _residual_circle(zr, zp, xs[:, None] + 1j * ys)
        j = np.argmin(radius, axis=1)
        edge = (j == 0) | (j == 2 * k)
        centers = ys[rows, j]
        values = radius[rows, j]
        widths = np.where(edge, 2.0 * widths, widths / k)
        if not edge.any() and widths.max() < tol_abs:
            break
    return centers, values


def _refine(zr, zp, a: complex, value: float, width: float, grid: OracleGrid) -> Tuple[complex, float]:
    """
    Local refinement of a coarse incumbent in the Cartesian plane of a = s e^{i theta}.

    The largest travel is convex in a, so an outer bracketing search over
    Re(a), each point minimised over Im(a) by _best_imag, converges on
    the variant's minimum even along a long thin valley.
    """
    k = grid.refine_points
    offsets = np.linspace(-1.0, 1.0, 2 * k + 1)
    tol_abs = grid.tol * abs(a)
    x, y = a.real, a.imag
    shrinks = expansions = 0
    while shrinks < grid.refine_rounds and width >= tol_abs:
        xs = x + width * offsets
        # Rows resolve one grid step finer than the outer bracket
        ys, values = _best_imag(zr, zp, xs, y, width, grid, tol_abs / k)
        j = int(np.argmin(values))
        if values[j] <= value:
            x, y, value = float(xs[j]), float(ys[j]), float(values[j])
        if j in (0, 2 * k):
            if expansions == grid.max_expansions:
                logger.warning(f"Oracle refinement stopped after {expansions} bracket expansions")
                break
            expansions += 1
            width *= 2.0
        else:
            width /= k
            shrinks += 1
    return complex(x, y), value


def _search_variant(zr, zp, grid: OracleGrid, lo: float, hi: float) -> Tuple[complex, float]:
    """Coarse pass (widening the scale window if needed) then local refinement"""
    step = math.log(grid.window_factor)
    for _ in range(grid.max_widenings + 1):
        theta, u, value, si = _coarse(zr, zp, grid, lo, hi)
        if si == 0:
            lo -= step
        elif si == grid.scale_cells:
            hi += step
        else:
            break
        logger.debug(f"Oracle incumbent on scale window edge, widened to [{lo:.3f}, {hi:.3f}]")
    else:
        logger.warning(f"Oracle incumbent still on window edge after {grid.max_widenings} widenings")

    a = complex(np.exp(u + 1j * theta))
    # Two coarse cells either way, as a distance in the a-plane
    width = abs(a) * 2.0 * max(2.0 * math.pi / grid.theta_cells, (hi - lo) / grid.scale_cells)
    return _refine(zr, zp, a, value, width, grid)


def _variant(P: Triangle, perm: Permutation3, mirrored: bool) -> np.ndarray:
    zp = np.array(perm.apply(P).as_complex())
    return np.conj(zp) if mirrored else zp


def oracle_minmax(R: Triangle, P: Triangle, grid: OracleGrid = OracleGrid()) -> OracleResult:
    """
    Approximate d* by searching (theta, log s) for every assignment and mirror.

    The translation is solved exactly: the best translation for a given
    rotation and scale centers the smallest circle enclosing the residuals,
    whose radius is the largest travel. That radius is convex in the
    multiplier a = s e^{i theta}, so each variant has a single basin and the
    coarse pass only has to supply a starting point.
    """
    require_nondegenerate(R, "robots")
    require_nondegenerate(P, "pattern")
    zr = np.array(R.as_complex())
    ratio = scale_of(R) / scale_of(P)
    lo = math.log(ratio / grid.window_factor)
    hi = math.log(ratio * grid.window_factor)

    best = None
    for perm in Permutation3.all():
        for mirrored in (False, True):
            zp = _variant(P, perm, mirrored)
            a, value = _search_variant(zr, zp, grid, lo, hi)
            if best is None or value < best[0]:
                best = (value, a, perm, mirrored)

    value, a, perm, mirrored = best
    zp = _variant(P, perm, mirrored)
    center, radius = _residual_circle(zr, zp, np.complex128(a))
    transform = SimilarityTransform(
        theta=math.atan2(a.imag, a.real) % (2.0 * math.pi),
        scale=abs(a),
        translation=Point.from_complex(complex(center)),
    )
    logger.debug(f"Oracle d*={float(radius):.12g} perm={perm.mapping} mirrored={mirrored}")
    return OracleResult(
        d_star_approx=float(radius),
        best_transform=transform,
        permutation=perm,
        mirrored=mirrored,
    )


def oracle_destinations(P: Triangle, result: OracleResult) -> Triangle:
    """Formation placed by the oracle's transform, in robot order"""
    zp = _variant(P, result.permutation, result.mirrored)
    t = result.best_transform
    a = t.scale * complex(math.cos(t.theta), math.sin(t.theta))
    shift = t.translation.as_complex()
    return Triangle.from_complex(a * complex(z) + shift for z in zp)


def realized_distances(R: Triangle, P: Triangle, result: OracleResult) -> Tuple[float, float, float]:
    """Per-robot travel under the stored transform"""
    Q = oracle_destinations(P, result)
    return tuple(abs(r.as_complex() - q.as_complex()) for r, q in zip(R, Q))
