"""Worst-case spacing over all bump layouts.

For ``NFLs`` floating locations and ``NTAs`` bumps on an interval of length
``Ls`` the smallest achievable optimum is ``Ls / (NFLs + 2M - 1)`` with
``M = NTAs + 1`` brackets.  It is attained by ``M - 1`` brackets of width
``2v`` (one point each) next to one bracket holding all remaining points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from floatloc.layout import Instance
from floatloc.oracle import exact_optimum

MAX_GRID_EVALUATIONS = 10**7


@dataclass(frozen=True)
class WorstCaseReport:
    formula_value: float
    verified_min: float
    argmin_bumps: tuple[float, ...]
    grid_resolution: float
    evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "formula_value": self.formula_value,
            "verified_min": self.verified_min,
            "argmin_bumps": list(self.argmin_bumps),
            "grid_resolution": self.grid_resolution,
        }


def worst_case_value(total_length: float, num_floating: int, num_bumps: int) -> float:
    if not total_length > 0:
        raise ValueError("total_length must be positive")
    if num_floating < 1:
        raise ValueError("num_floating must be at least 1")
    if num_bumps < 0:
        raise ValueError("num_bumps must be nonnegative")
    m = num_bumps + 1
    return total_length / (num_floating + 2 * m - 1)


def adversarial_instance(
    total_length: float, num_floating: int, num_bumps: int, boundary_lower: float = 0.0
) -> Instance:
    """Bump layout whose exact optimum equals :func:`worst_case_value`."""
    if num_bumps < 1:
        raise ValueError("num_bumps must be at least 1")
    v = worst_case_value(total_length, num_floating, num_bumps)
    bumps = [boundary_lower + 2 * v * j for j in range(1, num_bumps + 1)]
    return Instance(boundary_lower, boundary_lower + total_length, bumps, num_floating)


def verify_worst_case(
    total_length: float,
    num_floating: int,
    num_bumps: int,
    grid_points: int,
    boundary_lower: float = 0.0,
) -> WorstCaseReport:
    """Minimise the exact optimum over bump tuples on a uniform grid.

    Bumps sit on the interior grid nodes ``Ls * i / grid_points``; only
    strictly increasing tuples are visited.
    """
    formula = worst_case_value(total_length, num_floating, num_bumps)
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    evaluations = math.comb(grid_points - 1, num_bumps)
    if evaluations > MAX_GRID_EVALUATIONS:
        raise ValueError(
            f"grid too large: {evaluations} evaluations exceeds {MAX_GRID_EVALUATIONS}"
        )
    if evaluations == 0:
        raise ValueError("grid has fewer interior nodes than bumps")
    upper = boundary_lower + total_length
    nodes = boundary_lower + total_length * np.arange(1, grid_points) / grid_points

    best, argmin = math.inf, ()
    for combo in itertools.combinations(nodes.tolist(), num_bumps):
        value = exact_optimum(Instance(boundary_lower, upper, combo, num_floating)).optimum_value
        if value < best:
            best, argmin = value, combo
    resolution = total_length / grid_points
    if best < formula - resolution:
        raise RuntimeError(
            f"grid minimum {best} is below the worst-case bound {formula} "
            f"by more than the grid resolution {resolution} (bumps {argmin})"
        )
    return WorstCaseReport(formula, best, tuple(argmin), resolution, evaluations)
