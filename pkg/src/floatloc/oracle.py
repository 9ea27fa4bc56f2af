"""Exact optimum, brute-force enumeration and random-placement baseline."""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from floatloc.heuristic import Allocation, min_spacing, spacing
from floatloc.layout import BracketSet, Instance, partition

FEAS_RTOL = 1e-9
BRUTE_MAX_FLOATING = 12
BRUTE_MAX_BRACKETS = 8

_CHUNK = 8192


@dataclass(frozen=True)
class OracleResult:
    optimum_value: float
    optimal_allocation: Allocation
    candidates_examined: int

    def to_dict(self) -> dict:
        return {
            "optimum_value": self.optimum_value,
            "optimal_allocation": list(self.optimal_allocation.counts),
            "candidates_examined": self.candidates_examined,
        }


def _capacities(areas: np.ndarray, v: float) -> np.ndarray:
    # cap_m(v) = max(0, floor(A_m / v) - 1), with a relative slack so that
    # v = A_m / (k + 1) gives exactly k
    q = np.floor(areas / v * (1.0 + FEAS_RTOL))
    return np.maximum(q - 1.0, 0.0).astype(np.int64)


def feasible(bracket_set: BracketSet, num_floating: int, v: float) -> bool:
    """True when ``num_floating`` points fit with every spacing at least ``v``."""
    if not v > 0:
        raise ValueError(f"v must be positive, got {v}")
    return int(_capacities(bracket_set.areas, v).sum()) >= num_floating


def _check_solvable(instance: Instance, bracket_set: BracketSet) -> None:
    if instance.num_floating < 1:
        raise ValueError("nothing to place")
    if not np.any(bracket_set.areas > 0):
        raise ValueError("degenerate instance")


def exact_optimum(instance: Instance) -> OracleResult:
    """Optimal max-min value by binary search over the finite candidate set.

    The binding bracket of any optimum holds an integer count k >= 1, so the
    optimum is one of the values ``A_m / (k + 1)``; feasibility is monotone
    in the target spacing, which makes bisection over sorted candidates exact.
    """
    brackets = partition(instance)
    _check_solvable(instance, brackets)
    n = instance.num_floating
    areas = brackets.areas
    positive = areas[areas > 0]
    ks = np.arange(2, n + 2, dtype=float)
    candidates = np.unique((positive[:, None] / ks[None, :]).ravel())

    # candidates[0] <= max(A) / (n + 1), which is always feasible
    lo, hi = 0, len(candidates) - 1
    examined = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        examined += 1
        if feasible(brackets, n, candidates[mid]):
            lo = mid
        else:
            hi = mid - 1
    best = float(candidates[lo])

    counts = _capacities(areas, best).tolist()
    surplus = sum(counts) - n
    while surplus > 0:
        # trim where the spacing after removal is largest; ties to lowest index
        pick = max(
            (i for i, c in enumerate(counts) if c >= 1),
            key=lambda i: (spacing(areas[i], counts[i] - 1), -i),
        )
        counts[pick] -= 1
        surplus -= 1
    allocation = Allocation(tuple(counts))
    return OracleResult(float(min_spacing(areas, allocation.counts)), allocation, examined)


def _compositions(total: int, parts: int):
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield out


def brute_force_optimum(instance: Instance) -> OracleResult:
    """Enumerate every way to split the points among the brackets."""
    brackets = partition(instance)
    _check_solvable(instance, brackets)
    n, m = instance.num_floating, len(brackets)
    if n > BRUTE_MAX_FLOATING or m > BRUTE_MAX_BRACKETS:
        raise ValueError(
            f"instance too large for brute force (num_floating={n}, brackets={m};"
            f" limits {BRUTE_MAX_FLOATING} and {BRUTE_MAX_BRACKETS})"
        )
    areas = [b.area for b in brackets]
    best_value, best_counts, examined = -math.inf, None, 0
    for counts in _compositions(n, m):
        examined += 1
        value = min_spacing(areas, counts)
        if value > best_value:
            best_value, best_counts = value, counts
    return OracleResult(float(best_value), Allocation(tuple(best_counts)), examined)


@dataclass(frozen=True)
class BaselineSample:
    objectives: np.ndarray
    seed: int
    trials: int

    def cdf(self) -> tuple[np.ndarray, np.ndarray]:
        values = np.sort(self.objectives)
        probs = np.arange(1, self.trials + 1) / self.trials
        return values, probs

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["trial", "objective"])
            for k, obj in enumerate(self.objectives.tolist()):
                writer.writerow([k, repr(obj)])

    def cdf_to_csv(self, path: str | Path) -> None:
        values, probs = self.cdf()
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["value", "cumulative_prob"])
            for v, p in zip(values.tolist(), probs.tolist()):
                writer.writerow([repr(v), repr(p)])


def _open_uniforms(seed: int, start: int, stop: int, n: int) -> np.ndarray:
    """Uniforms in (0, 1) for trials ``start..stop-1``.

    Trial k consumes words ``k*n .. k*n+n-1`` of a Philox stream keyed by
    ``seed``, so any chunk can be generated on its own.
    """
    bitgen = np.random.Philox(key=seed)
    skip = start * n
    bitgen.advance(skip // 4)
    if skip % 4:
        bitgen.random_raw(skip % 4)
    words = bitgen.random_raw((stop - start) * n).reshape(stop - start, n)
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def _draw_positions(instance: Instance, seed: int, start: int, stop: int) -> np.ndarray:
    n = instance.num_floating
    lo, ls = instance.boundary_lower, instance.total_length
    pos = lo + _open_uniforms(seed, start, stop, n) * ls
    bad = np.flatnonzero(
        np.any((pos <= lo) | (pos >= instance.boundary_upper), axis=1)
    )
    for row in bad:
        # rounding hit a boundary: redraw from a stream owned by this trial
        attempt = 0
        while True:
            rng = np.random.default_rng([seed, start + row, attempt])
            draw = lo + (1.0 - rng.random(n)) * ls
            if np.all((draw > lo) & (draw < instance.boundary_upper)):
                pos[row] = draw
                break
            attempt += 1
    return pos


def controllable_objectives(instance: Instance, positions: np.ndarray) -> np.ndarray:
    """Row-wise controllable objective for a (trials, n) array of positions."""
    pos = np.sort(np.atleast_2d(np.asarray(positions, dtype=float)), axis=1)
    fixed = np.asarray(instance.fixed_points)
    idx = np.searchsorted(fixed, pos)
    to_fixed = np.minimum(pos - fixed[idx - 1], fixed[idx] - pos).min(axis=1)
    if pos.shape[1] > 1:
        return np.minimum(to_fixed, np.diff(pos, axis=1).min(axis=1))
    return to_fixed


def random_baseline(
    instance: Instance, trials: int, seed: int, threads: int = 1
) -> BaselineSample:
    """Objective values of ``trials`` uniformly random placements.

    Each trial's draws depend only on ``(seed, trial index)``, so the result
    does not depend on ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if instance.num_floating < 1:
        raise ValueError("nothing to place")
    if seed < 0:
        raise ValueError("seed must be nonnegative")

    def work(bounds):
        a, b = bounds
        return controllable_objectives(instance, _draw_positions(instance, seed, a, b))

    chunks = [(a, min(a + _CHUNK, trials)) for a in range(0, trials, _CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return BaselineSample(np.concatenate(parts), seed, trials)


def quantile_of(value: float, sample: BaselineSample) -> float:
    """Fraction of the sample strictly below ``value``."""
    if sample.trials < 1 or len(sample.objectives) == 0:
        raise ValueError("sample is empty")
    return int(np.count_nonzero(sample.objectives < value)) / sample.trials
