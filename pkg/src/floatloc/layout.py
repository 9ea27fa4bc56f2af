"""Instance model, bracket partition and the max-min objective.

An instance is a closed interval ``[boundary_lower, boundary_upper]`` (in
tracks) with fixed bumps strictly inside it.  Boundaries and bumps split the
interval into brackets; floating locations are placed inside brackets so
that the smallest distance to any other point of interest is as large as
possible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

CONTROLLABLE = "controllable"
STRICT = "strict_eq1"
MODES = (CONTROLLABLE, STRICT)

BOUNDARY = "boundary"
BUMP = "bump"


class InvalidInstanceError(ValueError):
    """Raised when an instance violates one of its invariants."""


def _finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInstanceError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise InvalidInstanceError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Instance:
    """Boundaries, bump positions and the number of floating locations.

    Bumps are sorted and exact duplicates are merged on construction.
    """

    boundary_lower: float
    boundary_upper: float
    bumps: tuple[float, ...] = ()
    num_floating: int = 0

    def __post_init__(self):
        lo = _finite("boundary_lower", self.boundary_lower)
        hi = _finite("boundary_upper", self.boundary_upper)
        if not lo < hi:
            raise InvalidInstanceError(
                f"boundary_lower < boundary_upper violated: {lo} >= {hi}"
            )
        if isinstance(self.bumps, (str, bytes)) or not isinstance(self.bumps, Iterable):
            raise InvalidInstanceError("bumps must be a list of numbers")
        bumps = sorted({_finite("bump", b) for b in self.bumps})
        for b in bumps:
            if not lo < b < hi:
                raise InvalidInstanceError(
                    f"bump {b} outside the open interval ({lo}, {hi})"
                )
        n = self.num_floating
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            if isinstance(n, float) and n.is_integer():
                n = int(n)
            else:
                raise InvalidInstanceError(f"num_floating must be an integer, got {n!r}")
        if n < 0:
            raise InvalidInstanceError(f"num_floating must be nonnegative, got {n}")
        object.__setattr__(self, "boundary_lower", lo)
        object.__setattr__(self, "boundary_upper", hi)
        object.__setattr__(self, "bumps", tuple(bumps))
        object.__setattr__(self, "num_floating", int(n))

    @property
    def total_length(self) -> float:
        return self.boundary_upper - self.boundary_lower

    @property
    def num_bumps(self) -> int:
        return len(self.bumps)

    @property
    def fixed_points(self) -> tuple[float, ...]:
        """Boundaries and bumps, ascending."""
        return (self.boundary_lower, *self.bumps, self.boundary_upper)

    def with_num_floating(self, num_floating: int) -> "Instance":
        return Instance(self.boundary_lower, self.boundary_upper, self.bumps, num_floating)

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        if not isinstance(data, dict):
            raise InvalidInstanceError("instance must be a JSON object")
        missing = [
            k for k in ("boundary_lower", "boundary_upper", "num_floating") if k not in data
        ]
        if missing:
            raise InvalidInstanceError(f"missing field(s): {', '.join(missing)}")
        return cls(
            boundary_lower=data["boundary_lower"],
            boundary_upper=data["boundary_upper"],
            bumps=data.get("bumps", []),
            num_floating=data["num_floating"],
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "Instance":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidInstanceError(f"invalid JSON in {path}: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "boundary_lower": self.boundary_lower,
            "boundary_upper": self.boundary_upper,
            "bumps": list(self.bumps),
            "num_floating": self.num_floating,
        }


@dataclass(frozen=True)
class Bracket:
    lower_wall: float
    upper_wall: float
    lower_kind: str = BOUNDARY
    upper_kind: str = BOUNDARY

    @property
    def area(self) -> float:
        return self.upper_wall - self.lower_wall


@dataclass(frozen=True)
class BracketSet:
    brackets: tuple[Bracket, ...]
    total_length: float

    def __len__(self) -> int:
        return len(self.brackets)

    def __iter__(self):
        return iter(self.brackets)

    def __getitem__(self, i) -> Bracket:
        return self.brackets[i]

    @property
    def areas(self) -> np.ndarray:
        return np.array([b.area for b in self.brackets], dtype=float)

    @classmethod
    def from_areas(cls, areas: Sequence[float], start: float = 0.0) -> "BracketSet":
        """Contiguous brackets with the given widths, starting at ``start``."""
        walls = np.concatenate([[start], start + np.cumsum(np.asarray(areas, dtype=float))])
        kinds = [BOUNDARY] + [BUMP] * (len(areas) - 1) + [BOUNDARY]
        brackets = tuple(
            Bracket(walls[i], walls[i + 1], kinds[i], kinds[i + 1]) for i in range(len(areas))
        )
        return cls(brackets, float(walls[-1] - walls[0]))


@dataclass(frozen=True)
class Placement:
    positions: tuple[float, ...]
    objective_controllable: float
    objective_strict: float
    allocation: tuple[int, ...] = field(default=())

    def objective(self, mode: str = CONTROLLABLE) -> float:
        return self.objective_controllable if _check_mode(mode) == CONTROLLABLE else self.objective_strict

    def to_dict(self) -> dict:
        return {
            "positions": list(self.positions),
            "allocation": list(self.allocation),
            "objective_controllable": self.objective_controllable,
            "objective_strict": self.objective_strict,
        }


def _check_mode(mode: str) -> str:
    if mode == "strict":
        return STRICT
    if mode not in MODES:
        raise ValueError(f"unknown objective mode {mode!r}; expected one of {MODES}")
    return mode


def partition(instance: Instance) -> BracketSet:
    """Split the interval at every bump; returns ``num_bumps + 1`` brackets."""
    walls = instance.fixed_points
    kinds = [BOUNDARY] + [BUMP] * instance.num_bumps + [BOUNDARY]
    brackets = tuple(
        Bracket(walls[i], walls[i + 1], kinds[i], kinds[i + 1]) for i in range(len(walls) - 1)
    )
    return BracketSet(brackets, instance.total_length)


def evaluate_objective(
    instance: Instance, positions: Sequence[float], mode: str = CONTROLLABLE
) -> float:
    """Smallest pairwise distance among the points of interest.

    ``controllable`` only looks at pairs that contain at least one floating
    position; ``strict_eq1`` also counts bump-bump and bump-boundary pairs.
    """
    mode = _check_mode(mode)
    pos = np.asarray(positions, dtype=float).ravel()
    if pos.size != instance.num_floating:
        raise ValueError(
            f"expected {instance.num_floating} positions, got {pos.size}"
        )
    if pos.size and not (
        np.all(pos > instance.boundary_lower) and np.all(pos < instance.boundary_upper)
    ):
        raise ValueError("positions must lie strictly inside the boundaries")
    if mode == CONTROLLABLE and pos.size == 0:
        raise ValueError("nothing to place")

    fixed = np.asarray(instance.fixed_points)
    points = np.concatenate([fixed, pos])
    is_float = np.concatenate([np.zeros(fixed.size, bool), np.ones(pos.size, bool)])
    order = np.argsort(points, kind="stable")
    points, is_float = points[order], is_float[order]
    gaps = np.diff(points)
    if mode == STRICT:
        return float(gaps.min())
    # the nearest neighbour of any point is adjacent in sorted order
    touches_float = is_float[:-1] | is_float[1:]
    return float(gaps[touches_float].min())
