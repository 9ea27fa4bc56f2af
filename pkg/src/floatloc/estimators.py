"""Estimator-style front end so placements compose with scikit-learn tooling.

The "data" an optimizer is fitted on is the list of bump positions; the
interval and the number of floating locations are hyperparameters.

>>> opt = FloatingLocationOptimizer(num_floating=7, boundary_upper=1000.0)
>>> opt.fit([250.0, 750.0]).allocation_
(1, 4, 2)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from floatloc.heuristic import Allocation, optimize, place
from floatloc.layout import (
    CONTROLLABLE,
    STRICT,
    Instance,
    Placement,
    _check_mode,
    evaluate_objective,
    partition,
)
from floatloc.oracle import exact_optimum

SOLVERS = ("heuristic", "exact")


def check_bumps(X) -> np.ndarray:
    """Bump positions as a 1-D float array.

    Accepts a flat sequence or a single-column 2-D array.
    """
    arr = check_array(
        X, ensure_2d=False, ensure_min_samples=0, dtype=np.float64, ensure_all_finite=True
    )
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single column of bump positions, got shape {arr.shape}")
        arr = arr[:, 0]
    return arr


class FloatingLocationOptimizer(BaseEstimator):
    """Place ``num_floating`` points between fixed bumps.

    Parameters
    ----------
    num_floating : int
        Number of floating locations to place.
    boundary_lower, boundary_upper : float
        Interval ends, in tracks.
    solver : {"heuristic", "exact"}
        Bracket-allocation heuristic, or the exact parametric-search optimum.
    mode : {"controllable", "strict_eq1"}
        Which objective ``objective_`` and :meth:`score` report.

    Attributes
    ----------
    instance_ : Instance
    allocation_ : tuple of int
        Points per bracket.
    positions_ : ndarray
    objective_ : float
    placement_ : Placement
    """

    def __init__(
        self,
        num_floating=1,
        boundary_lower=0.0,
        boundary_upper=1000.0,
        solver="heuristic",
        mode=CONTROLLABLE,
    ):
        self.num_floating = num_floating
        self.boundary_lower = boundary_lower
        self.boundary_upper = boundary_upper
        self.solver = solver
        self.mode = mode

    def _instance(self, bumps) -> Instance:
        return Instance(
            self.boundary_lower, self.boundary_upper, tuple(bumps.tolist()), self.num_floating
        )

    def fit(self, X, y=None):
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        mode = _check_mode(self.mode)
        instance = self._instance(check_bumps(X))
        if self.solver == "heuristic":
            placement = optimize(instance)
        else:
            counts = exact_optimum(instance).optimal_allocation
            positions = place(partition(instance), counts)
            placement = Placement(
                tuple(positions),
                evaluate_objective(instance, positions, CONTROLLABLE),
                evaluate_objective(instance, positions, STRICT),
                counts.counts,
            )
        self.instance_ = instance
        self.placement_ = placement
        self.allocation_ = Allocation(placement.allocation).counts
        self.positions_ = np.asarray(placement.positions)
        self.objective_ = placement.objective(mode)
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).positions_

    def score(self, X=None, y=None) -> float:
        """Objective of the fitted placement against bumps ``X``.

        Defaults to the bumps seen in :meth:`fit`; passing another layout
        shows how a fixed placement fares when the bumps move.
        """
        check_is_fitted(self, "positions_")
        instance = self.instance_ if X is None else self._instance(check_bumps(X))
        return evaluate_objective(instance, self.positions_, _check_mode(self.mode))
