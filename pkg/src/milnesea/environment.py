"""Sea-surface wave spectrum and procedural seabed relief.

Two independent pieces of oceanographic scenery:

* an empirical one-dimensional power spectral density of fully developed
  wind waves, parameterised by the wind speed measured at 19.5 m above
  the surface, and
* a deterministic pseudo-random bathymetry built from half-sine hills of
  a fixed spacing whose heights are rescaled per hill by a seeded hash.

Wave numbers are in rad/m throughout; no 2 pi conversion is applied on
input or output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class SurfaceSpectrumParams:
    """Constants of the wind-wave spectrum.

    ``alpha`` and ``beta`` here are the classical dimensionless spectrum
    constants; they are unrelated to the signal amplitude and the medium
    damping that reuse those letters elsewhere in the package.
    ``wind_speed`` is in m/s at 19.5 m height, ``gravity`` in m/s^2.
    """

    wind_speed: float
    alpha: float = 0.0081
    beta: float = 0.74
    gravity: float = 9.82

    def __post_init__(self):
        for name in ("wind_speed", "alpha", "beta", "gravity"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def surface_psd(params: SurfaceSpectrumParams, k):
    """Spectral density S(k) = (alpha / 2 k^3) exp(-beta g^2 / (k^2 u^4)).

    k is the surface wave number in rad/m, strictly positive.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0):
        raise DomainError("surface wave number k must be positive")
    u = params.wind_speed
    g = params.gravity
    s = (params.alpha / (2.0 * k ** 3)) * np.exp(-params.beta * g * g / (k * k * u ** 4))
    return float(s) if s.ndim == 0 else s


def psd_peak_wavenumber(params: SurfaceSpectrumParams) -> float:
    """Wave number maximising the spectral density: g sqrt(2 beta / 3) / u^2."""
    return params.gravity * math.sqrt(2.0 * params.beta / 3.0) / params.wind_speed ** 2


class SpectrumSeries(NamedTuple):
    k: np.ndarray
    density: np.ndarray


def surface_psd_series(params: SurfaceSpectrumParams, k_min: float = 1e-3,
                       k_max: float = 10.0, samples: int = 512) -> SpectrumSeries:
    """Sample the spectrum on a log-spaced wave-number grid."""
    if not 0 < k_min < k_max:
        raise ValueError("need 0 < k_min < k_max")
    if samples < 2:
        raise ValueError("need at least two samples")
    k = np.logspace(math.log10(k_min), math.log10(k_max), samples)
    return SpectrumSeries(k, surface_psd(params, k))


@dataclass(frozen=True)
class BathymetrySpec:
    """Parameters of the procedural seabed profile.

    Hills repeat every ``hill_spacing`` metres along the track of total
    ``length``, sampled every ``dx``. ``zeta_max`` is the tallest possible
    hill; each hill is rescaled by a height factor in (0, 1] drawn
    reproducibly from ``seed`` and the hill index.
    """

    zeta_max: float
    hill_spacing: float
    length: float
    dx: float
    seed: int = 0

    def __post_init__(self):
        if not self.zeta_max > 0:
            raise ValueError("zeta_max must be positive")
        if not self.hill_spacing > 0:
            raise ValueError("hill_spacing must be positive")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        if not self.length >= self.dx:
            raise ValueError("length must cover at least one sample step")
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _hill_scale(seed: int, index: int) -> float:
    """Height factor in (0, 1] for one hill, from a counter-based hash.

    SplitMix64 finaliser applied to seed and hill index; the +1 in the
    final map keeps zero out of the range so every hill has some relief.
    """
    z = (seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return (z + 1) / 2.0 ** 64


class BathymetryProfile(NamedTuple):
    x: np.ndarray
    zeta: np.ndarray


def bathymetry_profile(spec: BathymetrySpec) -> BathymetryProfile:
    """Sample the seabed elevation zeta(x) at x = 0, dx, 2 dx, ... <= length.

    Each hill occupies one period of
        (zeta_max / 2) (sin(-pi/2 + 2 pi x / spacing) + 1)
    scaled by its height factor. The shape starts and ends at zero, so
    elevations sit in [0, zeta_max] and vanish exactly at hill
    boundaries x = n * hill_spacing.
    """
    # tolerance-floored so an endpoint that divides evenly in exact
    # arithmetic is kept even when length/dx lands just under an integer
    n = int(math.floor(spec.length / spec.dx + 1e-9))
    x = spec.dx * np.arange(n + 1)
    s = x / spec.hill_spacing
    index = np.floor(s).astype(int)
    frac = s - index
    # evaluating the sine at the reduced phase keeps the hill ends exact:
    # frac = 0 gives sin(-pi/2) = -1 and the bracket vanishes identically
    shape = 0.5 * spec.zeta_max * (np.sin(-0.5 * math.pi + 2.0 * math.pi * frac) + 1.0)
    scales = np.array([_hill_scale(spec.seed, int(i)) for i in index])
    return BathymetryProfile(x, scales * shape)
