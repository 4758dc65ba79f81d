"""End-to-end scenario runs: JSON config in, products out.

A scenario bundles a signal, a medium, a time window and a choice of
products to produce:

* ``trajectory``  integrated pressure samples (t, p, p')
* ``summary``     Milne energy, period and phase shift, either taken
                  from the config's ``dynamical_params`` block or
                  estimated from the integrated trajectory
* ``envelope``    envelope-square sweep on the output grid
* ``transition``  both transition-matrix forms plus their gap per grid time
* ``spectrum``    sea-surface spectral density on a log wave-number grid
* ``bathymetry``  procedural seabed profile

Products that cannot be produced at run time (estimation failed, envelope
denominator hit zero) are recorded as skips with a reason instead of
failing the whole run; configuration mistakes, by contrast, are rejected
up front by ``load_config`` with an exhaustive problem list.

All exports are deterministic: the same config yields byte-identical CSV
and JSON files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional, Tuple

import numpy as np

from . import solver
from .acoustic_signal import SignalSpec
from .environment import (BathymetryProfile, BathymetrySpec, SpectrumSeries,
                          SurfaceSpectrumParams, bathymetry_profile,
                          surface_psd_series)
from .errors import ConfigError, InsufficientDataError, NotComputedError, \
    SingularityError
from .medium import _BUMP_KINDS, CoefficientProfile, MediumSpec
from .milne import (EnvelopeSample, MilneState, SignalSummary, envelope_q,
                    estimate_period_phase, integrate_milne, milne_energy)
from .solver import Trajectory
from .transition import TransitionMatrix, compare_forms

PRODUCTS = ("trajectory", "summary", "envelope", "transition",
            "spectrum", "bathymetry")

_PROFILE_KEYS = {"kind", "base", "amplitude", "center", "width", "table"}


class DynamicalParams(NamedTuple):
    e_m: float
    delta: float
    tau: float


@dataclass(frozen=True)
class SpectrumRequest:
    params: SurfaceSpectrumParams
    k_min: float = 1e-3
    k_max: float = 10.0
    samples: int = 512


@dataclass(frozen=True)
class BathymetryRequest:
    zeta_max: float
    hill_spacing: float
    length: float
    dx: float
    seed: Optional[int] = None  # None: follow the scenario seed


@dataclass(frozen=True)
class ScenarioConfig:
    signal: SignalSpec
    medium: MediumSpec
    t0: float
    t1: float
    stride: int
    method: str
    dt: float
    rtol: float
    atol: float
    blowup_threshold: Optional[float]
    initial_condition: MilneState
    dynamical_params: Optional[DynamicalParams]
    spectrum: Optional[SpectrumRequest]
    bathymetry: Optional[BathymetryRequest]
    seed: int
    outputs: Tuple[str, ...]


class TransitionSample(NamedTuple):
    t: float
    composed: TransitionMatrix
    expanded: TransitionMatrix
    discrepancy: float


@dataclass
class ScenarioResult:
    """Everything one run produced, plus skip records for what it could not."""

    config: ScenarioConfig
    requested: Tuple[str, ...]
    trajectory: Optional[Trajectory] = None
    summary: Optional[SignalSummary] = None
    envelope: Optional[list] = None
    transition_samples: Optional[list] = None
    spectrum: Optional[SpectrumSeries] = None
    bathymetry: Optional[BathymetryProfile] = None
    skips: dict = field(default_factory=dict)

    _ATTRS = {"trajectory": "trajectory", "summary": "summary",
              "envelope": "envelope", "transition": "transition_samples",
              "spectrum": "spectrum", "bathymetry": "bathymetry"}

    def data_for(self, product: str):
        return getattr(self, self._ATTRS[product])

    def status_of(self, product: str) -> str:
        """'computed' or 'skipped' for a requested product."""
        if product not in self.requested:
            raise NotComputedError(f"{product!r} was not requested")
        return "skipped" if product in self.skips else "computed"


# ---------------------------------------------------------------------------
# configuration parsing


def _check_keys(block: dict, allowed, path: str, problems: list):
    for key in block:
        if key not in allowed:
            problems.append(f"{path}.{key}: unknown key")


def _get_block(raw: dict, key: str, problems: list) -> Optional[dict]:
    block = raw.get(key)
    if block is None:
        return None
    if not isinstance(block, dict):
        problems.append(f"{key}: expected an object")
        return None
    return block


def _get_num(block: dict, key: str, path: str, problems: list,
             default=None, required=False):
    if key not in block:
        if required:
            problems.append(f"{path}.{key}: required")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        problems.append(f"{path}.{key}: expected a number, "
                        f"got {type(v).__name__}")
        return default
    v = float(v)
    if not math.isfinite(v):
        problems.append(f"{path}.{key}: must be finite")
        return default
    return v


def _get_int(block: dict, key: str, path: str, problems: list, default=None):
    if key not in block:
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, int):
        problems.append(f"{path}.{key}: expected an integer, "
                        f"got {type(v).__name__}")
        return default
    return v


def _parse_profile(block, path: str, problems: list,
                   default_base: float) -> Optional[CoefficientProfile]:
    if block is None:
        return CoefficientProfile(kind="constant", base=default_base)
    if not isinstance(block, dict):
        problems.append(f"{path}: expected an object")
        return None
    _check_keys(block, _PROFILE_KEYS, path, problems)
    kind = block.get("kind")
    if not isinstance(kind, str):
        problems.append(f"{path}.kind: required string")
        return None
    kwargs = {"kind": kind}
    for name in ("base", "amplitude", "center", "width"):
        v = _get_num(block, name, path, problems)
        if v is not None:
            kwargs[name] = v
    if "table" in block:
        table = block["table"]
        ok = (isinstance(table, list) and
              all(isinstance(r, list) and len(r) == 2 and
                  all(isinstance(x, (int, float)) and not isinstance(x, bool)
                      for x in r)
                  for r in table))
        if not ok:
            problems.append(f"{path}.table: expected a list of [t, value] pairs")
            return None
        kwargs["table"] = tuple((float(a), float(b)) for a, b in table)
    try:
        return CoefficientProfile(**kwargs)
    except ValueError as exc:
        problems.append(f"{path}: {exc}")
        return None


def _parse_signal(raw: dict, problems: list) -> Optional[SignalSpec]:
    block = _get_block(raw, "signal", problems) or {}
    _check_keys(block, {"amplitude", "sound_speed", "wave_number",
                        "wavelength", "angular_frequency"}, "signal", problems)
    amplitude = _get_num(block, "amplitude", "signal", problems, default=1.0)
    sound_speed = _get_num(block, "sound_speed", "signal", problems,
                           default=1480.0)
    given = [key for key in ("wave_number", "wavelength", "angular_frequency")
             if key in block]
    if len(given) > 1 or (not given and "signal" in raw):
        got = ", ".join(given) if given else "none"
        problems.append("signal: provide exactly one of wave_number, "
                        f"wavelength, angular_frequency (got {got})")
        return None
    key = given[0] if given else "wave_number"
    value = _get_num(block, key, "signal", problems, default=0.1)
    if amplitude is None or sound_speed is None or value is None:
        return None
    builders = {"wave_number": SignalSpec.from_wave_number,
                "wavelength": SignalSpec.from_wavelength,
                "angular_frequency": SignalSpec.from_angular_frequency}
    try:
        return builders[key](amplitude, sound_speed, value)
    except ValueError as exc:
        problems.append(f"signal: {exc}")
        return None


def _parse_medium(raw: dict, problems: list,
                  sound_speed: float) -> Optional[MediumSpec]:
    # the medium shares the signal's sound speed; configuring it twice
    # would only invite contradictions
    block = _get_block(raw, "medium", problems) or {}
    _check_keys(block, {"omega", "beta", "allow_degenerate_omega"},
                "medium", problems)
    omega = _parse_profile(block.get("omega"), "medium.omega", problems, 1.0)
    beta = _parse_profile(block.get("beta"), "medium.beta", problems, 0.0)
    allow = block.get("allow_degenerate_omega", False)
    if not isinstance(allow, bool):
        problems.append("medium.allow_degenerate_omega: expected a boolean")
        return None
    if omega is None or beta is None:
        return None
    try:
        return MediumSpec(omega, beta, sound_speed=sound_speed,
                          allow_degenerate_omega=allow)
    except ValueError as exc:
        problems.append(f"medium: {exc}")
        return None


def load_config(text: str) -> ScenarioConfig:
    """Parse and validate a JSON scenario configuration.

    Rejects unknown keys at every level and reports every problem found,
    not just the first, via ConfigError.problems.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"JSON parse error at line {exc.lineno} "
                           f"column {exc.colno}: {exc.msg}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["top level must be a JSON object"])

    problems: list[str] = []
    _check_keys(raw, {"signal", "medium", "time", "solver",
                      "initial_condition", "dynamical_params", "environment",
                      "seed", "outputs"}, "config", problems)

    signal = _parse_signal(raw, problems)
    medium = _parse_medium(raw, problems,
                           signal.sound_speed if signal else 1480.0)

    tblock = _get_block(raw, "time", problems) or {}
    _check_keys(tblock, {"t0", "t1", "stride"}, "time", problems)
    t0 = _get_num(tblock, "t0", "time", problems, default=0.0)
    t1 = _get_num(tblock, "t1", "time", problems, default=2.0)
    stride = _get_int(tblock, "stride", "time", problems, default=10)
    if t0 is not None and t1 is not None and not t1 > t0:
        problems.append(f"time: t1 ({t1}) must exceed t0 ({t0})")
    if stride is not None and stride < 1:
        problems.append(f"time.stride: must be >= 1, got {stride}")

    sblock = _get_block(raw, "solver", problems) or {}
    _check_keys(sblock, {"method", "dt", "rtol", "atol", "blowup_threshold"},
                "solver", problems)
    method = sblock.get("method", "fixed")
    if method not in ("fixed", "adaptive"):
        problems.append(f"solver.method: expected 'fixed' or 'adaptive', "
                        f"got {method!r}")
    dt = _get_num(sblock, "dt", "solver", problems, default=solver.DEFAULT_DT)
    rtol = _get_num(sblock, "rtol", "solver", problems,
                    default=solver.DEFAULT_RTOL)
    atol = _get_num(sblock, "atol", "solver", problems,
                    default=solver.DEFAULT_ATOL)
    threshold = _get_num(sblock, "blowup_threshold", "solver", problems)
    for name, v in (("dt", dt), ("rtol", rtol), ("atol", atol)):
        if v is not None and v <= 0:
            problems.append(f"solver.{name}: must be positive, got {v}")
    if threshold is not None and threshold <= 0:
        problems.append(f"solver.blowup_threshold: must be positive, "
                        f"got {threshold}")

    ic = None
    icblock = _get_block(raw, "initial_condition", problems)
    if icblock is not None:
        _check_keys(icblock, {"p0", "p_dot0"}, "initial_condition", problems)
        p0 = _get_num(icblock, "p0", "initial_condition", problems,
                      required=True)
        pd0 = _get_num(icblock, "p_dot0", "initial_condition", problems,
                       default=0.0)
        if p0 is not None and pd0 is not None:
            ic = MilneState(p0, pd0)

    dyn = None
    dblock = _get_block(raw, "dynamical_params", problems)
    if dblock is not None:
        _check_keys(dblock, {"e_m", "delta", "tau"}, "dynamical_params",
                    problems)
        e_m = _get_num(dblock, "e_m", "dynamical_params", problems,
                       required=True)
        delta = _get_num(dblock, "delta", "dynamical_params", problems,
                         required=True)
        tau = _get_num(dblock, "tau", "dynamical_params", problems,
                       required=True)
        if tau is not None and not tau > 0:
            problems.append(f"dynamical_params.tau: must be positive, got {tau}")
        if None not in (e_m, delta, tau) and tau > 0:
            dyn = DynamicalParams(e_m, delta, tau)

    spectrum = None
    bathymetry = None
    eblock = _get_block(raw, "environment", problems)
    if eblock is not None:
        _check_keys(eblock, {"surface_spectrum", "bathymetry"}, "environment",
                    problems)
        spblock = _get_block(eblock, "surface_spectrum", problems)
        if spblock is not None:
            path = "environment.surface_spectrum"
            _check_keys(spblock, {"wind_speed", "alpha", "beta", "gravity",
                                  "k_min", "k_max", "samples"}, path, problems)
            wind = _get_num(spblock, "wind_speed", path, problems,
                            required=True)
            kwargs = {}
            for name in ("alpha", "beta", "gravity"):
                v = _get_num(spblock, name, path, problems)
                if v is not None:
                    kwargs[name] = v
            k_min = _get_num(spblock, "k_min", path, problems, default=1e-3)
            k_max = _get_num(spblock, "k_max", path, problems, default=10.0)
            samples = _get_int(spblock, "samples", path, problems, default=512)
            if wind is not None:
                try:
                    params = SurfaceSpectrumParams(wind_speed=wind, **kwargs)
                    if not 0 < k_min < k_max:
                        raise ValueError(f"need 0 < k_min ({k_min}) "
                                         f"< k_max ({k_max})")
                    if samples < 2:
                        raise ValueError("samples must be >= 2")
                    spectrum = SpectrumRequest(params, k_min, k_max, samples)
                except ValueError as exc:
                    problems.append(f"{path}: {exc}")
        bblock = _get_block(eblock, "bathymetry", problems)
        if bblock is not None:
            path = "environment.bathymetry"
            _check_keys(bblock, {"zeta_max", "hill_spacing", "length", "dx",
                                 "seed"}, path, problems)
            zeta = _get_num(bblock, "zeta_max", path, problems, required=True)
            spacing = _get_num(bblock, "hill_spacing", path, problems,
                               required=True)
            length = _get_num(bblock, "length", path, problems, required=True)
            dx = _get_num(bblock, "dx", path, problems, required=True)
            bseed = _get_int(bblock, "seed", path, problems)
            if None not in (zeta, spacing, length, dx):
                try:
                    # construct once to reuse the range checks, then keep
                    # the request form so a scenario seed can flow in later
                    BathymetrySpec(zeta, spacing, length, dx, bseed or 0)
                    bathymetry = BathymetryRequest(zeta, spacing, length, dx,
                                                   bseed)
                except ValueError as exc:
                    problems.append(f"{path}: {exc}")

    seed = _get_int(raw, "seed", "config", problems, default=0)
    if seed is not None and seed < 0:
        problems.append(f"seed: must be nonnegative, got {seed}")

    outputs = raw.get("outputs", ["trajectory", "summary"])
    if (not isinstance(outputs, list)
            or not all(isinstance(o, str) for o in outputs)):
        problems.append("outputs: expected a list of product names")
        outputs = []
    else:
        for o in outputs:
            if o not in PRODUCTS:
                problems.append(f"outputs: unknown product {o!r}; "
                                f"choose from {', '.join(PRODUCTS)}")
        if len(set(outputs)) != len(outputs):
            problems.append("outputs: duplicate product names")
        if "spectrum" in outputs and spectrum is None:
            problems.append("outputs: 'spectrum' requested but "
                            "environment.surface_spectrum is missing")
        if "bathymetry" in outputs and bathymetry is None:
            problems.append("outputs: 'bathymetry' requested but "
                            "environment.bathymetry is missing")

    if problems:
        raise ConfigError(problems)

    if ic is None:
        ic = MilneState(signal.amplitude, 0.0)

    return ScenarioConfig(signal=signal, medium=medium, t0=t0, t1=t1,
                          stride=stride, method=method, dt=dt, rtol=rtol,
                          atol=atol, blowup_threshold=threshold,
                          initial_condition=ic, dynamical_params=dyn,
                          spectrum=spectrum, bathymetry=bathymetry,
                          seed=seed, outputs=tuple(outputs))


def _profile_to_dict(profile: CoefficientProfile) -> dict:
    d = {"kind": profile.kind}
    if profile.kind == "table":
        d["table"] = [[t, v] for t, v in profile.table]
    else:
        d["base"] = profile.base
        if profile.kind in _BUMP_KINDS:
            d.update(amplitude=profile.amplitude, center=profile.center,
                     width=profile.width)
    return d


def config_to_dict(config: ScenarioConfig) -> dict:
    """Canonical dict form of a config, defaults materialised."""
    doc = {
        "signal": {"amplitude": config.signal.amplitude,
                   "sound_speed": config.signal.sound_speed,
                   "wave_number": config.signal.wave_number},
        "medium": {"omega": _profile_to_dict(config.medium.omega_profile),
                   "beta": _profile_to_dict(config.medium.beta_profile)},
        "time": {"t0": config.t0, "t1": config.t1, "stride": config.stride},
        "solver": {"method": config.method, "dt": config.dt,
                   "rtol": config.rtol, "atol": config.atol},
        "initial_condition": {"p0": config.initial_condition.p,
                              "p_dot0": config.initial_condition.p_dot},
        "seed": config.seed,
        "outputs": list(config.outputs),
    }
    if config.medium.allow_degenerate_omega:
        doc["medium"]["allow_degenerate_omega"] = True
    if config.blowup_threshold is not None:
        doc["solver"]["blowup_threshold"] = config.blowup_threshold
    if config.dynamical_params is not None:
        dyn = config.dynamical_params
        doc["dynamical_params"] = {"e_m": dyn.e_m, "delta": dyn.delta,
                                   "tau": dyn.tau}
    env = {}
    if config.spectrum is not None:
        sp = config.spectrum
        env["surface_spectrum"] = {
            "wind_speed": sp.params.wind_speed, "alpha": sp.params.alpha,
            "beta": sp.params.beta, "gravity": sp.params.gravity,
            "k_min": sp.k_min, "k_max": sp.k_max, "samples": sp.samples}
    if config.bathymetry is not None:
        b = config.bathymetry
        block = {"zeta_max": b.zeta_max, "hill_spacing": b.hill_spacing,
                 "length": b.length, "dx": b.dx}
        if b.seed is not None:
            block["seed"] = b.seed
        env["bathymetry"] = block
    if env:
        doc["environment"] = env
    return doc


def dumps_config(config: ScenarioConfig) -> str:
    """Serialise a config canonically; load_config round-trips it."""
    return json.dumps(config_to_dict(config), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# running


def _estimation_window(medium: MediumSpec, t0: float,
                       t1: float) -> Optional[Tuple[float, float]]:
    """Time window where bump disturbances have died down (5 widths past)."""
    start = t0
    for prof in (medium.omega_profile, medium.beta_profile):
        if prof.kind in _BUMP_KINDS:
            start = max(start, prof.center + 5.0 * prof.width)
    return (start, t1) if start > t0 else None


def _output_grid(config: ScenarioConfig) -> np.ndarray:
    base = config.dt if config.method == "fixed" else solver.DEFAULT_DT
    h = config.stride * base
    n = int(math.floor((config.t1 - config.t0) / h + 1e-9))
    return config.t0 + h * np.arange(n + 1)


def _estimate_summary(trajectory: Trajectory,
                      config: ScenarioConfig) -> SignalSummary:
    window = _estimation_window(config.medium, config.t0, config.t1)
    tau, delta = estimate_period_phase(trajectory, window=window)
    times = trajectory.times
    states = trajectory.states
    if window is not None:
        mask = (times >= window[0]) & (times <= window[1])
        times, states = times[mask], states[mask]
    energy = milne_energy((states[:, 0], states[:, 1]), config.signal,
                          config.medium, times)
    return SignalSummary(e_m=float(np.mean(energy)), tau=tau, delta=delta)


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """Produce every product the config requests.

    Runtime failures of individual products become skip records; the
    trajectory itself is data even when it ends in a blow-up (its status
    says so).
    """
    requested = config.outputs
    result = ScenarioResult(config=config, requested=requested)

    needs_params = bool({"summary", "envelope", "transition"} & set(requested))
    must_estimate = needs_params and config.dynamical_params is None
    trajectory = None
    if "trajectory" in requested or must_estimate:
        trajectory = integrate_milne(
            config.signal, config.medium, (config.t0, config.t1),
            ic=config.initial_condition, method=config.method, dt=config.dt,
            rtol=config.rtol, atol=config.atol,
            blowup_threshold=config.blowup_threshold)
        if "trajectory" in requested:
            result.trajectory = trajectory

    params = config.dynamical_params
    params_skip_reason = None
    if must_estimate:
        try:
            summary = _estimate_summary(trajectory, config)
            params = DynamicalParams(summary.e_m, summary.delta, summary.tau)
        except InsufficientDataError as exc:
            params_skip_reason = f"estimation failed: {exc}"

    if "summary" in requested:
        if params is None:
            result.skips["summary"] = params_skip_reason
        else:
            result.summary = SignalSummary(e_m=params.e_m, tau=params.tau,
                                           delta=params.delta)

    grid = _output_grid(config)

    if "envelope" in requested:
        if params is None:
            result.skips["envelope"] = params_skip_reason
        else:
            samples = []
            try:
                for t in grid:
                    samples.append(envelope_q(params.e_m, params.tau,
                                              config.signal, config.medium,
                                              float(t)))
                result.envelope = samples
            except SingularityError as exc:
                result.skips["envelope"] = str(exc)

    if "transition" in requested:
        if params is None:
            result.skips["transition"] = params_skip_reason
        else:
            samples = []
            try:
                for t in grid:
                    cmp = compare_forms(params.e_m, params.delta, params.tau,
                                        config.signal, config.medium, float(t))
                    samples.append(TransitionSample(float(t), cmp.composed,
                                                    cmp.expanded,
                                                    cmp.discrepancy))
                result.transition_samples = samples
            except SingularityError as exc:
                result.skips["transition"] = str(exc)

    if "spectrum" in requested:
        sp = config.spectrum
        result.spectrum = surface_psd_series(sp.params, sp.k_min, sp.k_max,
                                             sp.samples)

    if "bathymetry" in requested:
        b = config.bathymetry
        seed = b.seed if b.seed is not None else config.seed
        result.bathymetry = bathymetry_profile(
            BathymetrySpec(b.zeta_max, b.hill_spacing, b.length, b.dx, seed))

    return result


# ---------------------------------------------------------------------------
# exports


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _csv_rows(result: ScenarioResult, product: str):
    if product == "trajectory":
        traj = result.trajectory
        yield "t,p,p_dot"
        for t, (p, pd) in zip(traj.times, traj.states):
            yield f"{_fmt(t)},{_fmt(p)},{_fmt(pd)}"
    elif product == "summary":
        s = result.summary
        yield "e_m,tau,delta,e_m_bound_violated"
        flag = "true" if s.e_m_bound_violated else "false"
        yield f"{_fmt(s.e_m)},{_fmt(s.tau)},{_fmt(s.delta)},{flag}"
    elif product == "envelope":
        yield "t,q_squared,magnitude,imaginary_branch"
        for s in result.envelope:
            flag = "true" if s.imaginary_branch else "false"
            yield f"{_fmt(s.t)},{_fmt(s.q_squared)},{_fmt(s.magnitude)},{flag}"
    elif product == "transition":
        yield "t,m11,m12,m21,m22,provenance,discrepancy"
        for s in result.transition_samples:
            for mat in (s.composed, s.expanded):
                m = mat.entries
                yield (f"{_fmt(s.t)},{_fmt(m[0, 0])},{_fmt(m[0, 1])},"
                       f"{_fmt(m[1, 0])},{_fmt(m[1, 1])},{mat.provenance},"
                       f"{_fmt(s.discrepancy)}")
    elif product == "spectrum":
        yield "k,S"
        for k, s in zip(result.spectrum.k, result.spectrum.density):
            yield f"{_fmt(k)},{_fmt(s)}"
    elif product == "bathymetry":
        yield "x,zeta"
        for x, z in zip(result.bathymetry.x, result.bathymetry.zeta):
            yield f"{_fmt(x)},{_fmt(z)}"
    else:
        raise ValueError(f"unknown product {product!r}")


def _require_product(result: ScenarioResult, product: str):
    if product not in PRODUCTS:
        raise ValueError(f"unknown product {product!r}")
    if product not in result.requested:
        raise NotComputedError(f"{product} was not requested by the scenario")
    if product in result.skips:
        raise NotComputedError(f"{product} was skipped: {result.skips[product]}")


def export_csv(result: ScenarioResult, product: str, destination) -> Path:
    """Write one product as CSV with full float precision (%.17g).

    Raises NotComputedError (naming the skip reason) for products the run
    did not produce.
    """
    _require_product(result, product)
    path = Path(destination)
    text = "\n".join(_csv_rows(result, product)) + "\n"
    path.write_text(text)
    return path


def _csv_row_count(result: ScenarioResult, product: str) -> int:
    if product == "trajectory":
        return len(result.trajectory)
    if product == "summary":
        return 1
    if product == "envelope":
        return len(result.envelope)
    if product == "transition":
        return 2 * len(result.transition_samples)
    if product == "spectrum":
        return len(result.spectrum.k)
    return len(result.bathymetry.x)


def result_to_dict(result: ScenarioResult) -> dict:
    """JSON-ready summary document for a scenario run."""
    products = {}
    for name in result.requested:
        if name in result.skips:
            products[name] = {"status": "skipped",
                              "reason": result.skips[name]}
        else:
            products[name] = {"status": "computed",
                              "rows": _csv_row_count(result, name)}
    doc = {
        "schema_version": "1",
        "config": config_to_dict(result.config),
        "products": products,
        "summary": None,
        "solver_status": None,
    }
    if result.summary is not None:
        s = result.summary
        doc["summary"] = {"e_m": s.e_m, "tau": s.tau, "delta": s.delta,
                          "flags": {"e_m_bound_violated": s.e_m_bound_violated}}
    if result.trajectory is not None:
        traj = result.trajectory
        doc["solver_status"] = {"status": traj.status,
                                "message": traj.message,
                                "samples": len(traj),
                                "last_time": traj.last_time if len(traj) else None}
    return doc


def export_json(result: ScenarioResult, destination) -> Path:
    """Write the run summary document (schema_version 1) as stable JSON."""
    path = Path(destination)
    text = json.dumps(result_to_dict(result), indent=2, sort_keys=True) + "\n"
    path.write_text(text)
    return path
