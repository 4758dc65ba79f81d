"""Explicit Runge-Kutta integrators with blow-up and step-limit reporting.

Everything dynamical in this package is a small first-order system
y' = f(t, y). Two integrators are provided:

* ``integrate_fixed``    classic fourth-order Runge-Kutta on a uniform grid,
* ``integrate_adaptive`` embedded Dormand-Prince 5(4) pair with proportional
  step control and cubic Hermite dense output.

They are deliberately independent code paths: the adaptive integrator acts
as the accuracy oracle for the fixed one in the test suite, so neither may
be expressed in terms of the other.

Divergence is an expected physical regime here (the medium can pump energy
into a signal until the pressure grows without bound), so hitting the
blow-up guard is reported as a trajectory status instead of raised as an
exception. Callers inspect ``Trajectory.status``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

COMPLETED = "completed"
ABORTED_BLOWUP = "aborted-blowup"
ABORTED_STEP_LIMIT = "aborted-step-limit"

DEFAULT_DT = 1e-3
DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
DEFAULT_MAX_STEPS = 10_000_000

RHS = Callable[[float, np.ndarray], np.ndarray]


@dataclass
class Trajectory:
    """Recorded solution samples plus how the integration ended.

    ``times`` is strictly increasing and ``states`` has one row per time.
    ``status`` is one of COMPLETED, ABORTED_BLOWUP, ABORTED_STEP_LIMIT;
    aborted trajectories carry a diagnostic ``message`` and keep every
    finite state recorded up to the abort.
    """

    times: np.ndarray
    states: np.ndarray
    status: str = COMPLETED
    message: Optional[str] = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.times.ndim != 1:
            raise ValueError("times must be a 1-d array")
        if self.states.shape[:1] != self.times.shape:
            raise ValueError("states must have one row per time")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if self.status not in (COMPLETED, ABORTED_BLOWUP, ABORTED_STEP_LIMIT):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status != COMPLETED and not self.message:
            raise ValueError("aborted trajectories need a message")

    def __len__(self):
        return self.times.size

    @property
    def completed(self) -> bool:
        return self.status == COMPLETED

    @property
    def last_time(self) -> float:
        return float(self.times[-1])

    @property
    def last_state(self) -> np.ndarray:
        return self.states[-1]


def default_blowup_threshold(y0) -> float:
    """Guard level used when the caller does not supply one."""
    y0 = np.asarray(y0, dtype=float)
    return 1e6 * max(1.0, float(np.max(np.abs(y0))))


def _check_span(t_span):
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (np.isfinite(t0) and np.isfinite(t1) and t1 > t0):
        raise ValueError(f"need finite t1 > t0, got {t_span!r}")
    return t0, t1


def _prepare(y0, blowup_threshold):
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    if not np.all(np.isfinite(y0)):
        raise ValueError("initial state must be finite")
    if blowup_threshold is None:
        blowup_threshold = default_blowup_threshold(y0)
    if blowup_threshold <= 0:
        raise ValueError("blowup_threshold must be positive")
    return y0, float(blowup_threshold)


def integrate_fixed(rhs: RHS, y0, t_span, dt: float = DEFAULT_DT,
                    blowup_threshold: Optional[float] = None) -> Trajectory:
    """Integrate y' = rhs(t, y) with classic RK4 on a uniform grid.

    The grid is t0 + i*dt with a shorter final step so the last sample
    lands exactly on t1. Every step is recorded. If any state component
    exceeds ``blowup_threshold`` in magnitude the offending state is
    recorded (it is still finite) and integration stops with status
    ABORTED_BLOWUP; a non-finite right-hand side aborts the same way
    without recording.
    """
    t0, t1 = _check_span(t_span)
    y, threshold = _prepare(y0, blowup_threshold)
    if dt <= 0:
        raise ValueError("dt must be positive")

    n_whole = int((t1 - t0) // dt)
    grid = t0 + dt * np.arange(n_whole + 1)
    if t1 - grid[-1] > 1e-12 * dt:
        grid = np.append(grid, t1)
    else:
        grid[-1] = t1

    times = [t0]
    states = [y.copy()]
    if np.max(np.abs(y)) > threshold:
        return Trajectory(np.array(times), np.array(states), ABORTED_BLOWUP,
                          f"initial state already exceeds guard {threshold:g}")

    for i in range(len(grid) - 1):
        t = grid[i]
        h = grid[i + 1] - t
        k1 = np.asarray(rhs(t, y), dtype=float)
        k2 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k1), dtype=float)
        k3 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k2), dtype=float)
        k4 = np.asarray(rhs(t + h, y + h * k3), dtype=float)
        y_new = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y_new)):
            return Trajectory(np.array(times), np.array(states), ABORTED_BLOWUP,
                              f"non-finite state near t={grid[i + 1]:.6g}")
        times.append(grid[i + 1])
        states.append(y_new)
        if np.max(np.abs(y_new)) > threshold:
            return Trajectory(np.array(times), np.array(states), ABORTED_BLOWUP,
                              f"|state| exceeded {threshold:g} at t={grid[i + 1]:.6g}")
        y = y_new

    return Trajectory(np.array(times), np.array(states), COMPLETED)


# Dormand-Prince 5(4) tableau. _B is the fifth-order weight row, _E the
# difference between the fifth- and fourth-order rows (direct error weights).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
               -17253 / 339200, 22 / 525, -1 / 40])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def _hermite(t, y0, f0, t1, y1, f1, s):
    """Cubic Hermite interpolant over [t, t1] evaluated at s."""
    h = t1 - t
    theta = (s - t) / h
    t2 = theta * theta
    t3 = t2 * theta
    return ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * f0
            + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * f1)


def _initial_step(t0, t1, y0, f0, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    if d0 >= 1e-5 and d1 >= 1e-5:
        h = 0.01 * d0 / d1
    else:
        h = 1e-3 * (t1 - t0)
    return min(h, t1 - t0)


def integrate_adaptive(rhs: RHS, y0, t_span, rtol: float = DEFAULT_RTOL,
                       atol: float = DEFAULT_ATOL,
                       t_eval: Optional[Sequence[float]] = None,
                       max_steps: int = DEFAULT_MAX_STEPS,
                       blowup_threshold: Optional[float] = None) -> Trajectory:
    """Integrate y' = rhs(t, y) with an embedded Dormand-Prince 5(4) pair.

    Step sizes follow the standard proportional controller on the RMS of
    the scaled local error estimate (scale = atol + rtol*|y|). Without
    ``t_eval`` the accepted step points are recorded; with it, samples at
    the requested times are produced by cubic Hermite interpolation over
    each accepted step (exact at step endpoints). ``t_eval`` must be
    increasing and lie inside ``t_span``.

    Aborts with ABORTED_BLOWUP when an accepted state exceeds the guard
    or the step size underflows near a finite-time singularity, and with
    ABORTED_STEP_LIMIT when ``max_steps`` step attempts are exhausted.
    """
    t0, t1 = _check_span(t_span)
    y, threshold = _prepare(y0, blowup_threshold)
    if rtol <= 0 or atol <= 0:
        raise ValueError("rtol and atol must be positive")

    eval_mode = t_eval is not None
    if eval_mode:
        t_eval = np.asarray(t_eval, dtype=float)
        if t_eval.size and (t_eval[0] < t0 or t_eval[-1] > t1):
            raise ValueError("t_eval must lie within t_span")
        if t_eval.size > 1 and not np.all(np.diff(t_eval) > 0):
            raise ValueError("t_eval must be strictly increasing")

    times: list[float] = []
    states: list[np.ndarray] = []
    eval_idx = 0

    def record_initial():
        nonlocal eval_idx
        if eval_mode:
            if t_eval.size and t_eval[0] == t0:
                times.append(t0)
                states.append(y.copy())
                eval_idx = 1
        else:
            times.append(t0)
            states.append(y.copy())

    def finish(status, message=None):
        n = len(times)
        arr_t = np.array(times) if n else np.empty(0)
        arr_y = np.array(states) if n else np.empty((0, y.size))
        return Trajectory(arr_t, arr_y, status, message)

    f = np.asarray(rhs(t0, y), dtype=float)
    if not np.all(np.isfinite(f)):
        return finish(ABORTED_BLOWUP, f"non-finite right-hand side at t={t0:.6g}")
    record_initial()
    if np.max(np.abs(y)) > threshold:
        return finish(ABORTED_BLOWUP,
                      f"initial state already exceeds guard {threshold:g}")

    t = t0
    h = _initial_step(t0, t1, y, f, rtol, atol)
    attempts = 0
    k = np.empty((7, y.size))

    while t < t1:
        if attempts >= max_steps:
            return finish(ABORTED_STEP_LIMIT,
                          f"gave up after {max_steps} step attempts at t={t:.6g}")
        attempts += 1
        h = min(h, t1 - t)
        if t + h == t:
            return finish(ABORTED_BLOWUP,
                          f"step size underflow at t={t:.6g} "
                          "(finite-time singularity suspected)")

        k[0] = f
        bad_stage = False
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = rhs(t + _C[i] * h, yi)
            if not np.all(np.isfinite(k[i])):
                bad_stage = True
                break
        if bad_stage:
            h *= 0.25
            continue

        y_new = y + h * (_B @ k)
        err = h * (_E @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = float(np.sqrt(np.mean((err / scale) ** 2)))
        if not np.isfinite(err_norm):
            h *= 0.25
            continue

        if err_norm > 1.0:
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
            continue

        t_new = t + h
        f_new = k[6]  # FSAL: already rhs(t_new, y_new)
        if eval_mode:
            while eval_idx < t_eval.size and t_eval[eval_idx] <= t_new:
                s = t_eval[eval_idx]
                times.append(float(s))
                states.append(_hermite(t, y, k[0], t_new, y_new, f_new, s))
                eval_idx += 1
        else:
            times.append(t_new)
            states.append(y_new.copy())

        if np.max(np.abs(y_new)) > threshold:
            return finish(ABORTED_BLOWUP,
                          f"|state| exceeded {threshold:g} at t={t_new:.6g}")

        t, y, f = t_new, y_new, f_new
        if err_norm == 0.0:
            h *= _MAX_FACTOR
        else:
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2))

    return finish(COMPLETED)
