"""2x2 transition matrices describing how the medium transforms a signal.

Two closed forms are provided for the transition matrix:

* the composed form, a rotation sandwich D(tau) . K(2 delta) . D(tau)
  where the kernel K carries the envelope squares on its off-diagonal,
* the expanded form, written directly in single angles.

The two are NOT algebraically equal and are deliberately kept as written;
``compare_forms`` measures the gap between them entrywise so downstream
users can see exactly how far apart they sit for given parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .acoustic_signal import SignalSpec
from .medium import MediumSpec
from .milne import _wrap_angle, q_plus_minus_squared

COMPOSED = "composed"
EXPANDED = "expanded"


def _freeze(entries) -> np.ndarray:
    arr = np.asarray(entries, dtype=float)
    if arr.shape != (2, 2):
        raise ValueError("entries must be 2x2")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RotationMatrix:
    """Proper rotation by ``angle``; orthogonal with determinant one.

    ``angle`` is reported reduced to (-pi, pi]; the entries are built
    from the angle as given (cos and sin do not care).
    """

    entries: np.ndarray
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        object.__setattr__(self, "angle", _wrap_angle(float(self.angle)))


@dataclass(frozen=True)
class TransitionMatrix:
    """One evaluated transition matrix with its provenance.

    ``provenance`` records which closed form produced the entries
    ("composed" or "expanded"); ``params`` is the evaluation point
    (e_m, delta, tau, t) and ``rotation`` the outer rotation factor.
    """

    entries: np.ndarray
    provenance: str
    params: Tuple[float, float, float, float]
    rotation: RotationMatrix

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        if self.provenance not in (COMPOSED, EXPANDED):
            raise ValueError(f"unknown provenance {self.provenance!r}")


def rotation(tau: float) -> RotationMatrix:
    """Rotation matrix [[cos tau, -sin tau], [sin tau, cos tau]]."""
    c = math.cos(tau)
    s = math.sin(tau)
    return RotationMatrix(np.array([[c, -s], [s, c]]), tau)


def composed_from_q(q_plus_sq: float, q_minus_sq: float, delta: float,
                    tau: float) -> np.ndarray:
    """Rotation-sandwich form D(tau) . K(2 delta) . D(tau).

    The kernel K = [[cos 2d, q_minus^2 sin 2d], [-q_plus^2 sin 2d, cos 2d]]
    is multiplied by the SAME rotation on both sides (not a similarity
    transform; neither side is inverted). With both envelope squares
    forced to 1 the whole product collapses to a rotation by
    2 tau - 2 delta.
    """
    d = rotation(tau).entries
    c2 = math.cos(2.0 * delta)
    s2 = math.sin(2.0 * delta)
    kernel = np.array([[c2, q_minus_sq * s2],
                       [-q_plus_sq * s2, c2]])
    return d @ kernel @ d


def expanded_from_q(q_plus_sq: float, q_minus_sq: float, delta: float,
                    tau: float) -> np.ndarray:
    """Direct single-angle form of the transition matrix."""
    ct = math.cos(tau)
    st = math.sin(tau)
    cd = math.cos(delta)
    sd = math.sin(delta)
    return np.array([
        [ct * cd + q_minus_sq * st * sd, q_minus_sq * sd * ct - st * cd],
        [st * cd - q_plus_sq * sd * ct, cd * ct + q_plus_sq * st * sd],
    ])


def transition_composed(e_m: float, delta: float, tau: float, spec: SignalSpec,
                        medium: MediumSpec, t: float) -> TransitionMatrix:
    """Composed-form transition matrix with envelope squares from the medium."""
    qp, qm = q_plus_minus_squared(e_m, tau, spec, medium, t)
    return TransitionMatrix(composed_from_q(qp, qm, delta, tau), COMPOSED,
                            (e_m, delta, tau, t), rotation(tau))


def transition_expanded(e_m: float, delta: float, tau: float, spec: SignalSpec,
                        medium: MediumSpec, t: float) -> TransitionMatrix:
    """Expanded-form transition matrix with envelope squares from the medium."""
    qp, qm = q_plus_minus_squared(e_m, tau, spec, medium, t)
    return TransitionMatrix(expanded_from_q(qp, qm, delta, tau), EXPANDED,
                            (e_m, delta, tau, t), rotation(tau))


@dataclass(frozen=True)
class FormComparison:
    """Entrywise gap between the two transition-matrix forms."""

    discrepancy: float
    composed: TransitionMatrix
    expanded: TransitionMatrix


def compare_forms(e_m: float, delta: float, tau: float, spec: SignalSpec,
                  medium: MediumSpec, t: float) -> FormComparison:
    """Evaluate both forms at the same point and report max |difference|."""
    comp = transition_composed(e_m, delta, tau, spec, medium, t)
    expa = transition_expanded(e_m, delta, tau, spec, medium, t)
    gap = float(np.max(np.abs(comp.entries - expa.entries)))
    return FormComparison(gap, comp, expa)
