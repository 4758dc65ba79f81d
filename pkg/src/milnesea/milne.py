"""Nonlinear pressure dynamics of a signal inside the oscillator medium.

The pressure p(t) of a signal interacting with the medium obeys a
Milne-type equation: a second-order ODE whose nonlinearity is quadratic
in the rate,

    p'' = p p'^2 - beta(t) p' + beta(t) c k p + omega(t)^2 c t k p

(solved for p''). ``eq9_residual`` keeps the unreduced form of the law,
before the arccos term is linearised, as an independent cross-check: a
candidate solution can be substituted into both and should not satisfy
one without the other.

Alongside the dynamics live the quadratic energy functionals (Lagrangian
density, Hamiltonian density, Milne energy), the oscillating envelope the
Milne energy induces, and an estimator that reads the signal period and
phase shift off a settled trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np

from . import solver
from .acoustic_signal import SignalSpec
from .errors import DomainError, InsufficientDataError, SingularityError
from .medium import MediumSpec, beta_at, omega_at
from .solver import Trajectory, integrate_adaptive, integrate_fixed


class MilneState(NamedTuple):
    p: float
    p_dot: float


@dataclass(frozen=True)
class EnvelopeSample:
    """Envelope-square value at one time.

    ``q_squared`` may come out positive or negative; ``magnitude`` is
    sqrt(|q_squared|) either way, and ``imaginary_branch`` records which
    side the sample is on (see envelope_q and eq14_amplitude for the two
    polarity conventions in use).
    """

    t: float
    q_squared: float
    magnitude: float
    imaginary_branch: bool


@dataclass(frozen=True)
class SignalSummary:
    """Headline numbers extracted for a signal: energy, period, phase.

    delta is normalised into (-pi, pi] on construction. The
    ``e_m_bound_violated`` flag is derived, never supplied: it marks
    summaries whose Milne energy fell below 1, the level the settled
    envelope analysis assumes.
    """

    e_m: float
    tau: float
    delta: float
    e_m_bound_violated: bool = field(init=False)

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        object.__setattr__(self, "delta", _wrap_angle(self.delta))
        object.__setattr__(self, "e_m_bound_violated", bool(self.e_m < 1.0))


def _wrap_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    w = math.atan2(math.sin(a), math.cos(a))
    if w == -math.pi:
        w = math.pi
    return w


def _ck(spec: SignalSpec) -> float:
    return spec.sound_speed * spec.wave_number


def milne_rhs(state, spec: SignalSpec, medium: MediumSpec, t: float) -> np.ndarray:
    """Right-hand side (p', p'') of the pressure equation."""
    p, pd = state[0], state[1]
    b = beta_at(medium.beta_profile, t)
    w = medium.omega(t)
    ck = _ck(spec)
    pdd = (p * pd * pd - b * pd + b * ck * p
           + w * w * spec.sound_speed * t * spec.wave_number * p)
    return np.array([pd, pdd])


def eq9_residual(p: float, p_dot: float, p_ddot: float, spec: SignalSpec,
                 medium: MediumSpec, t: float) -> float:
    """Residual of the unreduced pressure law at one phase point.

    Zero (to roundoff) for exact solutions. This form still contains the
    arccos(p / amplitude) term that the evolution equation replaces by
    its leading linearisation, so it only accepts |p| <= amplitude.
    """
    a = spec.amplitude
    if abs(p) > a:
        raise DomainError(f"|p|={abs(p)} exceeds amplitude {a}")
    b = beta_at(medium.beta_profile, t)
    w = medium.omega(t)
    ck = _ck(spec)
    a2 = a * a
    return (p_ddot * p * p / a2
            - p * p_dot * p_dot
            + b * p_dot * p * p / a2
            - b * ck * p
            - w * w * p * math.acos(p / a)
            - w * w * spec.sound_speed * t * spec.wave_number * p)


def integrate_milne(spec: SignalSpec, medium: MediumSpec, t_span,
                    ic: Optional[MilneState] = None, method: str = "fixed",
                    dt: float = solver.DEFAULT_DT,
                    rtol: float = solver.DEFAULT_RTOL,
                    atol: float = solver.DEFAULT_ATOL,
                    blowup_threshold: Optional[float] = None,
                    t_eval=None,
                    max_steps: int = solver.DEFAULT_MAX_STEPS) -> Trajectory:
    """Integrate the pressure equation over t_span.

    The default initial condition is the wave crest at rest,
    (p, p') = (amplitude, 0). Blow-up is a legitimate outcome for this
    equation (the time-proportional restoring term goes unstable), so
    check the returned Trajectory.status.
    """
    if ic is None:
        ic = MilneState(spec.amplitude, 0.0)

    def rhs(t, y):
        return milne_rhs(y, spec, medium, t)

    if method == "fixed":
        return integrate_fixed(rhs, ic, t_span, dt=dt,
                               blowup_threshold=blowup_threshold)
    if method == "adaptive":
        return integrate_adaptive(rhs, ic, t_span, rtol=rtol, atol=atol,
                                  t_eval=t_eval, max_steps=max_steps,
                                  blowup_threshold=blowup_threshold)
    raise ValueError(f"unknown method {method!r}; use 'fixed' or 'adaptive'")


def _potential(p, spec: SignalSpec, medium: MediumSpec, t):
    b = beta_at(medium.beta_profile, t)
    w = medium.omega(t)
    ck = _ck(spec)
    return (0.5 * b * ck * p * p
            + 0.5 * w * w * spec.sound_speed * t * spec.wave_number * p * p)


def lagrangian_density(state, spec: SignalSpec, medium: MediumSpec, t):
    """Kinetic plus potential quadratic form, (1/2) p'^2 + V(p, t).

    Broadcasts: state may hold arrays (p, p') paired with an array t.
    """
    pd = state[1]
    return 0.5 * pd * pd + _potential(state[0], spec, medium, t)


def hamiltonian_density(state, spec: SignalSpec, medium: MediumSpec, t):
    """Kinetic minus potential quadratic form, (1/2) p'^2 - V(p, t).

    Lagrangian and Hamiltonian densities differ by exactly twice the
    potential; the tests hold this identity pointwise.
    """
    pd = state[1]
    return 0.5 * pd * pd - _potential(state[0], spec, medium, t)


def milne_energy(state, spec: SignalSpec, medium: MediumSpec, t):
    """Effective signal strength: the Hamiltonian form on the envelope state.

    With a stationary envelope (q' = 0) this reduces to
    -((beta c k + omega^2 c t k) / 2) q^2.
    """
    return hamiltonian_density(state, spec, medium, t)


def envelope_denominator(spec: SignalSpec, medium: MediumSpec, t: float) -> float:
    """beta(t) c k + omega(t)^2 c t k, the stiffness the envelope divides by."""
    b = beta_at(medium.beta_profile, t)
    w = medium.omega(t)
    return b * _ck(spec) + w * w * spec.sound_speed * t * spec.wave_number


def envelope_q(e_m: float, tau: float, spec: SignalSpec, medium: MediumSpec,
               t: float) -> EnvelopeSample:
    """Envelope square 2 E_M cos(2t - tau) / (beta c k + omega^2 c t k).

    The returned q_squared is the radicand of the envelope's square root.
    The envelope itself carries a +-i prefactor, so a positive radicand
    is the imaginary branch here: ``imaginary_branch`` is True when
    q_squared > 0. Raises SingularityError where the denominator
    vanishes.
    """
    den = envelope_denominator(spec, medium, t)
    if den == 0.0:
        raise SingularityError(
            f"envelope denominator vanishes at t={t!r}", t=float(t))
    q2 = 2.0 * e_m * math.cos(2.0 * t - tau) / den
    return EnvelopeSample(t=float(t), q_squared=float(q2),
                          magnitude=math.sqrt(abs(q2)),
                          imaginary_branch=bool(q2 > 0))


def q_plus_minus_squared(e_m: float, tau: float, spec: SignalSpec,
                         medium: MediumSpec, t: float) -> Tuple[float, float]:
    """The opposite-sign envelope-square pair (q_plus^2, q_minus^2).

    q_minus^2 is the envelope radicand, q_plus^2 its negation, so the two
    always sum to exactly zero.
    """
    q_minus = envelope_q(e_m, tau, spec, medium, t).q_squared
    return -q_minus, q_minus


def eq14_amplitude(q_plus_sq: float, q_minus_sq: float, tau: float,
                   t: float) -> EnvelopeSample:
    """Combined amplitude square q_plus^2 cos^2(t-tau) + q_minus^2 sin^2(t-tau).

    Polarity note: here a *negative* radicand marks the imaginary branch
    (the square root itself goes imaginary). That is the opposite
    convention from envelope_q, whose radicand sits under a +-i prefactor
    so a *positive* value is the imaginary side there. Callers comparing
    the two must account for the sign flip.
    """
    ct = math.cos(t - tau)
    st = math.sin(t - tau)
    rad = q_plus_sq * ct * ct + q_minus_sq * st * st
    return EnvelopeSample(t=float(t), q_squared=float(rad),
                          magnitude=math.sqrt(abs(rad)),
                          imaginary_branch=bool(rad < 0))


def estimate_period_phase(trajectory: Trajectory,
                          window: Optional[Tuple[float, float]] = None
                          ) -> Tuple[float, float]:
    """Estimate (tau, delta): oscillation period and phase shift.

    Zero crossings of p are located by linear interpolation between
    samples; the period is twice the mean crossing spacing. The phase
    shift delta is defined by fitting p ~ A cos(omega t - delta) with
    omega = 2 pi / tau: each sample contributes the angle
    atan2(-p'/omega, p) - omega t, and delta is minus the circular mean
    of those contributions, normalised to (-pi, pi].

    ``window`` restricts the fit to times in [window[0], window[1]],
    which is how callers exclude a transient while the medium is still
    disturbed. Raises InsufficientDataError with fewer than three zero
    crossings.
    """
    times = trajectory.times
    states = trajectory.states
    if window is not None:
        lo, hi = window
        mask = (times >= lo) & (times <= hi)
        times = times[mask]
        states = states[mask]
    if times.size < 2:
        raise InsufficientDataError("need at least two samples in the window")

    p = states[:, 0]
    v = states[:, 1]

    flips = np.signbit(p[:-1]) != np.signbit(p[1:])
    moved = p[1:] != p[:-1]
    idx = np.where(flips & moved)[0]
    if idx.size < 3:
        raise InsufficientDataError(
            f"found {idx.size} zero crossings, need at least 3")

    frac = p[idx] / (p[idx] - p[idx + 1])
    crossings = times[idx] + frac * (times[idx + 1] - times[idx])

    tau = 2.0 * float(np.mean(np.diff(crossings)))
    omega = 2.0 * math.pi / tau

    phase = np.arctan2(-v / omega, p)
    offsets = phase - omega * times
    mean_angle = math.atan2(float(np.mean(np.sin(offsets))),
                            float(np.mean(np.cos(offsets))))
    delta = _wrap_angle(-mean_angle)
    return tau, delta
