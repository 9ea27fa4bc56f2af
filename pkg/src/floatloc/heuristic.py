"""Bracket-allocation heuristic.

Pipeline: partition the interval into brackets, give every bracket the
real-valued count that equalises spacing across brackets, drop brackets
whose share is below one point, round, then move single points between
brackets until the total matches, and finally space points evenly inside
each bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from floatloc.layout import (
    BracketSet,
    Instance,
    Placement,
    CONTROLLABLE,
    STRICT,
    evaluate_objective,
    partition,
)

# absorbs representation error in raw allocations such as 1.4999999999999998
_ROUND_EPS = 1e-9


@dataclass(frozen=True)
class RawAllocation:
    """Real-valued counts before elimination and rounding.

    ``shares`` holds ``N_i + 1`` as computed; ``values`` subtracts the one.
    Keeping the shares avoids cancellation for very narrow brackets.
    """

    shares: tuple[float, ...]

    @classmethod
    def from_values(cls, values) -> "RawAllocation":
        return cls(tuple(v + 1.0 for v in values))

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(s - 1.0 for s in self.shares)

    @property
    def total(self) -> float:
        return math.fsum(self.shares) - len(self.shares)

    def implied_spacings(self, bracket_set: BracketSet) -> tuple[float, ...]:
        return tuple(b.area / s for b, s in zip(bracket_set, self.shares))


@dataclass(frozen=True)
class Allocation:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"counts must be nonnegative, got {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)


def spacing(area: float, count: int) -> float:
    """Gap between neighbours when ``count`` points split ``area`` evenly."""
    return area / (count + 1)


def min_spacing(areas: Sequence[float], counts: Sequence[int]) -> float:
    """Smallest spacing over brackets that hold at least one point."""
    used = [spacing(a, n) for a, n in zip(areas, counts) if n >= 1]
    if not used:
        raise ValueError("nothing to place")
    return min(used)


def initial_allocation_raw(bracket_set: BracketSet, num_floating: int) -> RawAllocation:
    """Real-valued counts giving every bracket the spacing Ls / (NFLs + M)."""
    if len(bracket_set) == 0:
        raise ValueError("bracket set is empty")
    ls = bracket_set.total_length
    if ls <= 0:
        raise ValueError("degenerate boundary")
    m = len(bracket_set)
    return RawAllocation(tuple((num_floating + m) * b.area / ls for b in bracket_set))


def eliminate_and_round(raw: RawAllocation) -> Allocation:
    """Zero out brackets with a raw share below one, round the rest half-up."""
    counts = []
    for v in raw.values:
        if v < 1.0 - _ROUND_EPS:
            counts.append(0)
        else:
            counts.append(math.floor(v + 0.5 + _ROUND_EPS))
    return Allocation(tuple(counts))


def adjust(allocation: Allocation, bracket_set: BracketSet, num_floating: int) -> Allocation:
    """Add or remove one point at a time until the total is ``num_floating``.

    A point is added where the resulting spacing is largest and removed
    where the current spacing is smallest; ties go to the lowest index.
    Eliminated brackets stay eligible for additions.
    """
    if len(allocation) != len(bracket_set):
        raise ValueError("allocation and bracket set have different lengths")
    if num_floating < 0:
        raise ValueError("num_floating must be nonnegative")
    areas = [b.area for b in bracket_set]
    counts = list(allocation.counts)
    total = sum(counts)
    while total < num_floating:
        best, best_s = 0, -math.inf
        for i, (a, n) in enumerate(zip(areas, counts)):
            s = spacing(a, n + 1)
            if s > best_s:
                best, best_s = i, s
        counts[best] += 1
        total += 1
    while total > num_floating:
        best, best_s = -1, math.inf
        for i, (a, n) in enumerate(zip(areas, counts)):
            if n < 1:
                continue
            s = spacing(a, n)
            if s < best_s:
                best, best_s = i, s
        counts[best] -= 1
        total -= 1
    return Allocation(tuple(counts))


def place(bracket_set: BracketSet, allocation: Allocation) -> list[float]:
    """Evenly spaced coordinates inside each bracket, ascending."""
    positions: list[float] = []
    for bracket, n in zip(bracket_set, allocation.counts):
        step = spacing(bracket.area, n)
        positions.extend(bracket.lower_wall + k * step for k in range(1, n + 1))
    return positions


def allocate(instance: Instance) -> Allocation:
    """Heuristic allocation of floating locations to brackets."""
    if instance.num_floating < 1:
        raise ValueError("nothing to place")
    brackets = partition(instance)
    if not np.any(brackets.areas > 0):
        raise ValueError("degenerate instance")
    raw = initial_allocation_raw(brackets, instance.num_floating)
    return adjust(eliminate_and_round(raw), brackets, instance.num_floating)


def optimize(instance: Instance) -> Placement:
    brackets = partition(instance)
    allocation = allocate(instance)
    positions = place(brackets, allocation)
    return Placement(
        positions=tuple(positions),
        objective_controllable=evaluate_objective(instance, positions, CONTROLLABLE),
        objective_strict=evaluate_objective(instance, positions, STRICT),
        allocation=allocation.counts,
    )
