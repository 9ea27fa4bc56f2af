"""Head drift while floating, modelled as a mass-spring-damper.

    m x'' + c x' + k_eff x = d,    k_eff = K_t * I - K_b,    x(0) = x'(0) = 0

``d`` is a constant step disturbance.  Positions are in tracks, times in
seconds.  The drift magnitude ``|x(t)|`` is compared against the clearance
between a floating location and its nearest bump to decide how long the
head may float before it has to be woken up and relocated.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

# below this |q| t^2 the trig/hyperbolic kernels switch to their Taylor series
_SERIES_Z = 1e-4
_BISECT_ITERS = 200


@dataclass(frozen=True)
class DriftParams:
    mass: float
    viscous: float
    k_bias: float
    k_torque: float
    current: float
    disturbance: float = 0.0

    def __post_init__(self):
        for name in ("mass", "viscous", "k_bias", "k_torque", "current", "disturbance"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.viscous < 0:
            raise ValueError(f"viscous must be nonnegative, got {self.viscous}")

    def with_disturbance(self, disturbance: float) -> "DriftParams":
        return replace(self, disturbance=disturbance)

    @classmethod
    def from_dict(cls, data: dict) -> "DriftParams":
        fields = ("mass", "viscous", "k_bias", "k_torque", "current", "disturbance")
        missing = [f for f in fields if f not in data]
        if missing:
            raise ValueError(f"missing drift parameter(s): {', '.join(missing)}")
        return cls(**{f: data[f] for f in fields})

    @classmethod
    def from_json(cls, path: str | Path) -> "DriftParams":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON in {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ValueError("drift parameters must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "mass": self.mass,
            "viscous": self.viscous,
            "k_bias": self.k_bias,
            "k_torque": self.k_torque,
            "current": self.current,
            "disturbance": self.disturbance,
        }


# m=1, c=2, k_eff=1: critically damped
DEMO_PARAMS = DriftParams(mass=1.0, viscous=2.0, k_bias=1.0, k_torque=2.0, current=1.0, disturbance=1.0)

# m=1, c=10, k_eff=0.05: overdamped with a ~200 s slow pole, so drift is still
# growing at the 60 s relocation period; pair with fit_disturbance
SLOW_PARAMS = DriftParams(mass=1.0, viscous=10.0, k_bias=0.05, k_torque=0.1, current=1.0, disturbance=0.0)


@dataclass(frozen=True)
class DriftTrace:
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", "x", "xdot"])
            for row in zip(self.times.tolist(), self.positions.tolist(), self.velocities.tolist()):
                writer.writerow([repr(v) for v in row])


def effective_stiffness(params: DriftParams) -> float:
    """Net restoring stiffness; positive means the head is pulled back."""
    return params.k_torque * params.current - params.k_bias


def _kernels(params: DriftParams, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``exp(-s t) * C(t)`` and ``exp(-s t) * S(t)`` with s = c / 2m.

    C and S solve y'' = q y with (C, C') = (1, 0) and (S, S') = (0, 1) at
    t = 0, where q = s^2 - k_eff / m.  The sign of q picks the regime:
    negative is oscillatory, zero critical, positive overdamped or unstable.
    """
    m, c = params.mass, params.viscous
    sigma = c / (2.0 * m)
    q = sigma * sigma - effective_stiffness(params) / m
    env = np.exp(-sigma * t)
    if q < 0:
        w = math.sqrt(-q)
        ec, es = env * np.cos(w * t), env * np.sin(w * t) / w
    elif q > 0:
        b = math.sqrt(q)
        bt = b * t
        with np.errstate(over="ignore", invalid="ignore"):
            big = bt > 300.0
            ec = np.where(big, 0.0, env * np.cosh(np.minimum(bt, 300.0)))
            es = np.where(big, 0.0, env * np.sinh(np.minimum(bt, 300.0)) / b)
            if np.any(big):
                grow = np.exp((b - sigma) * t)
                fade = np.exp(-(b + sigma) * t)
                ec = np.where(big, 0.5 * (grow + fade), ec)
                es = np.where(big, 0.5 * (grow - fade) / b, es)
    else:
        ec, es = env, env * t

    z = q * t * t
    small = np.abs(z) < _SERIES_Z
    if np.any(small):
        ec = np.where(small, env * (1 + z / 2 + z * z / 24 + z**3 / 720), ec)
        es = np.where(small, env * t * (1 + z / 6 + z * z / 120 + z**3 / 5040), es)
    return ec, es


def _as_times(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise ValueError("time must be nonnegative")
    return arr


def _unwrap(value: np.ndarray, like):
    return float(value) if np.ndim(like) == 0 else value


def drift_response(params: DriftParams, t):
    """Closed-form drift x(t) from rest; ``t`` may be a scalar or an array."""
    times = _as_times(t)
    m, c, d = params.mass, params.viscous, params.disturbance
    k = effective_stiffness(params)
    if k == 0.0:
        if c == 0.0:
            x = d * times**2 / (2.0 * m)
        else:
            # x = (d/c) (t - (m/c)(1 - exp(-c t / m))), expanded for small c t / m
            a = c * times / m
            with np.errstate(invalid="ignore"):
                exact = (d / c) * (times + (m / c) * np.expm1(-a))
            series = d * times**2 / (2.0 * m) * (1 - a / 3 + a * a / 12 - a**3 / 60)
            x = np.where(a < 1e-3, series, exact)
    else:
        ec, es = _kernels(params, times)
        sigma = c / (2.0 * m)
        x = (d / k) * (1.0 - ec - sigma * es)
    return _unwrap(x, t)


def drift_velocity(params: DriftParams, t):
    """Closed-form drift velocity x'(t) from rest."""
    times = _as_times(t)
    _, es = _kernels(params, times)
    return _unwrap(params.disturbance / params.mass * es, t)


def response_trace(params: DriftParams, t_end: float, dt: float) -> DriftTrace:
    """Closed-form response sampled on the same grid as :func:`simulate_drift`."""
    times = _time_grid(t_end, dt)
    return DriftTrace(times, drift_response(params, times), drift_velocity(params, times))


def _time_grid(t_end: float, dt: float) -> np.ndarray:
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    if not 0 < dt <= t_end:
        raise ValueError("dt must satisfy 0 < dt <= t_end")
    n = int(math.floor(t_end / dt + 1e-9))
    times = np.arange(n + 1) * dt
    if t_end - times[-1] > 1e-9 * t_end:
        times = np.append(times, t_end)
    else:
        times[-1] = t_end
    return times


def simulate_drift(params: DriftParams, t_end: float, dt: float) -> DriftTrace:
    """Fixed-step classical RK4 integration from rest."""
    times = _time_grid(t_end, dt)
    m, c, d = params.mass, params.viscous, params.disturbance
    k = effective_stiffness(params)

    def accel(x, v):
        return (d - c * v - k * x) / m

    xs = np.empty(times.size)
    vs = np.empty(times.size)
    x = v = 0.0
    xs[0] = vs[0] = 0.0
    for i in range(1, times.size):
        h = float(times[i] - times[i - 1])
        k1x, k1v = v, accel(x, v)
        k2x, k2v = v + 0.5 * h * k1v, accel(x + 0.5 * h * k1x, v + 0.5 * h * k1v)
        k3x, k3v = v + 0.5 * h * k2v, accel(x + 0.5 * h * k2x, v + 0.5 * h * k2v)
        k4x, k4v = v + h * k3v, accel(x + h * k3x, v + h * k3v)
        x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not (math.isfinite(x) and math.isfinite(v)):
            raise FloatingPointError(f"integration diverged at t={times[i]}")
        xs[i], vs[i] = x, v
    return DriftTrace(times, xs, vs)


def _first_peak_time(params: DriftParams) -> float | None:
    """Time of the first velocity zero after t = 0, oscillatory case only."""
    sigma = params.viscous / (2.0 * params.mass)
    q = sigma * sigma - effective_stiffness(params) / params.mass
    if q >= 0:
        return None
    return math.pi / math.sqrt(-q)


def max_drift(params: DriftParams, horizon: float) -> float:
    """Largest drift magnitude reached on ``[0, horizon]``.

    Outside the oscillatory regime x(t) is monotone, so the endpoint wins.
    With oscillation later peaks never exceed the first one.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if params.disturbance == 0.0:
        return 0.0
    best = abs(drift_response(params, horizon))
    peak = _first_peak_time(params)
    if peak is not None and peak <= horizon:
        best = max(best, abs(drift_response(params, peak)))
    return best


def _all_time_sup(params: DriftParams) -> tuple[float, bool]:
    """Supremum of |x| over all t and whether some finite t attains it."""
    d = abs(params.disturbance)
    if d == 0.0:
        return 0.0, True
    k = effective_stiffness(params)
    if k <= 0:
        return math.inf, False
    peak = _first_peak_time(params)
    if peak is not None:
        return abs(drift_response(params, peak)), True
    return d / k, False


def wakeup_period(params: DriftParams, clearance: float) -> float:
    """Longest float time whose drift stays below ``clearance``.

    Returns ``math.inf`` when the drift can never reach the clearance.
    """
    if not clearance > 0:
        raise ValueError(f"clearance must be positive, got {clearance}")
    sup, attained = _all_time_sup(params)
    if sup < clearance or (not attained and sup <= clearance):
        return math.inf

    lo, hi = 0.0, 1.0
    while max_drift(params, hi) < clearance:
        lo, hi = hi, 2.0 * hi
        if not math.isfinite(hi):
            return math.inf
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if max_drift(params, mid) < clearance:
            lo = mid
        else:
            hi = mid
    return hi


def fit_disturbance(params_without_d: DriftParams, horizon: float, target_drift: float) -> float:
    """Disturbance that makes x(horizon) equal ``target_drift``.

    The response is linear in d, so one unit-disturbance evaluation suffices.
    """
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    if not target_drift > 0:
        raise ValueError("target_drift must be positive")
    unit = drift_response(params_without_d.with_disturbance(1.0), horizon)
    if unit == 0.0:
        raise ValueError("unit-disturbance response is zero at the horizon")
    return target_drift / unit
