"""Hardware imperfections: phase-state errors and finite timing resolution."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .array import to_db
from .errors import DegenerateError, InvalidClockError, MissingOrderError
from .harmonics import HarmonicSpectrum, spectrum_analytic
from .waveform import ModulationSchedule, build_ssb_schedule


def apply_phase_errors(s: ModulationSchedule, errors_deg: Sequence[float]) -> ModulationSchedule:
    """Rotate each phase state by its error (degrees); timing is untouched."""
    if len(errors_deg) != 4:
        raise ValueError("need one phase error per state")
    states = tuple(c * complex(math.cos(math.radians(e)), math.sin(math.radians(e)))
                   for c, e in zip(s.phase_states, errors_deg))
    return replace(s, phase_states=states)


@dataclass(frozen=True)
class PhaseErrorModel:
    """Per-element, per-state phase offsets in degrees (shape ``(N, 4)``)."""

    per_state_errors: np.ndarray
    bound: float

    def __post_init__(self):
        errs = np.atleast_2d(np.asarray(self.per_state_errors, dtype=float))
        if errs.shape[1] != 4:
            raise ValueError("phase error table must have 4 columns")
        if self.bound < 0:
            raise ValueError("phase error bound must be non-negative")
        if np.any(np.abs(errs) > self.bound + 1e-12):
            raise ValueError(f"phase error exceeds bound {self.bound} degrees")
        object.__setattr__(self, "per_state_errors", errs)

    @classmethod
    def draw(cls, n_elements: int, bound: float, seed: int, fix_reference: bool = False) -> "PhaseErrorModel":
        """Uniform errors on ``[-bound, bound]``; ``fix_reference`` keeps the 0-degree state exact."""
        rng = np.random.default_rng(seed)
        errs = rng.uniform(-bound, bound, size=(n_elements, 4))
        if fix_reference:
            errs[:, 0] = 0.0
        return cls(errs, bound)

    def apply(self, schedules: Sequence[ModulationSchedule]) -> list[ModulationSchedule]:
        if len(schedules) != len(self.per_state_errors):
            raise ValueError("one row of phase errors per element is required")
        return [apply_phase_errors(s, row) for s, row in zip(schedules, self.per_state_errors)]


def _snap(x: float) -> int:
    # nearest integer, exact halves go down
    return math.ceil(x - 0.5)


def quantize_schedule(s: ModulationSchedule, clock_period: float) -> ModulationSchedule:
    """Snap window starts and on-duration to a controller clock grid.

    Ticks are anchored at t = 0. The on-duration keeps at least one tick and
    never grows past a quarter period. The result may break the SSB spacing
    slightly; ``validate_schedule`` reports by how much.
    """
    T = s.period
    if not 0 < clock_period <= T / 8:
        raise InvalidClockError(f"clock period must lie in (0, T_p/8], got {clock_period / T:.6g}*T_p")
    ticks_per_period = T / clock_period
    if abs(ticks_per_period - round(ticks_per_period)) > 1e-9 * ticks_per_period:
        warnings.warn(f"period is not a whole number of clock ticks ({ticks_per_period:.6g})", stacklevel=2)
    starts = tuple(_snap(t / clock_period) * clock_period for t in s.window_starts)
    n_on = max(1, _snap(s.on_duration / clock_period))
    while n_on > 1 and n_on * clock_period > T / 4 * (1 + 1e-12):
        n_on -= 1
    return replace(s, window_starts=starts, on_duration=n_on * clock_period)


def residual_level_db(spec: HarmonicSpectrum, h: int) -> float:
    """Level of order ``h`` relative to the -1st harmonic, in dB."""
    for order in (h, -1):
        if order not in spec:
            raise MissingOrderError(order)
    ref = abs(spec[-1])
    if ref < 1e-15:
        raise DegenerateError("-1st harmonic is zero")
    return to_db(abs(spec[h]) / ref)


@dataclass(frozen=True)
class ResidualStats:
    median: float
    p90: float
    max: float


def monte_carlo_residuals(
    bound: float,
    orders: Sequence[int],
    trials: int,
    seed: int,
    tau_fraction: float = 0.25,
    fix_reference: bool = False,
) -> dict[int, ResidualStats]:
    """Residual sideband statistics under random per-state phase errors.

    Each trial draws four errors uniform on ``[-bound, bound]`` degrees from
    its own ``SeedSequence`` child of ``seed`` (numpy PCG64), so the result
    does not depend on the order trials are evaluated in.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    orders = [int(h) for h in orders]
    lo, hi = min(orders + [-1]), max(orders + [-1])
    base = build_ssb_schedule(1.0, tau_fraction, 0.0)
    children = np.random.SeedSequence(seed).spawn(trials)
    levels = np.empty((trials, len(orders)))
    for i, child in enumerate(children):
        errs = np.random.default_rng(child).uniform(-bound, bound, size=4)
        if fix_reference:
            errs[0] = 0.0
        spec = spectrum_analytic(apply_phase_errors(base, errs), lo, hi)
        levels[i] = [residual_level_db(spec, h) for h in orders]
    return {
        h: ResidualStats(
            float(np.median(col)), float(np.percentile(col, 90)), float(col.max())
        )
        for h, col in zip(orders, levels.T)
    }

