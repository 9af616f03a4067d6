"""Uniform linear time-modulated array: steering, patterns, spectra, beam metrics.

Every harmonic is evaluated at the carrier wavelength; the (f_c + h f_p)
frequency offset is ignored, a relative error of f_p/f_c (under 1e-3 for a
1 MHz modulation on a 1.16 GHz carrier).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateError, EmptyGridError, InvalidAngleError
from .harmonics import spectrum_analytic
from .waveform import ModulationSchedule, build_ssb_schedule, check_duty

#: Power reported for linear magnitudes below 1e-12.
DB_FLOOR = -240.0
_LINEAR_FLOOR = 1e-12


def to_db(ratio):
    """20 log10 of a magnitude ratio, with tiny values pinned to ``DB_FLOOR``."""
    r = np.asarray(ratio, dtype=float)
    out = np.where(r < _LINEAR_FLOOR, DB_FLOOR, 20.0 * np.log10(np.maximum(r, _LINEAR_FLOOR)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ArrayConfig:
    n_elements: int
    spacing: float
    carrier_freq: float
    mod_freq: float
    schedules: tuple[ModulationSchedule, ...]

    def __post_init__(self):
        object.__setattr__(self, "schedules", tuple(self.schedules))
        if self.n_elements < 1:
            raise ValueError("need at least one element")
        if len(self.schedules) != self.n_elements:
            raise ValueError(f"{len(self.schedules)} schedules for {self.n_elements} elements")
        if not self.spacing > 0:
            raise ValueError("element spacing must be positive")
        if not 0 < self.mod_freq < self.carrier_freq:
            raise ValueError("modulation frequency must be positive and below the carrier")
        if self.mod_freq / self.carrier_freq > 0.01:
            warnings.warn(
                f"f_p/f_c = {self.mod_freq / self.carrier_freq:.3g}; harmonics are evaluated at the carrier wavelength",
                stacklevel=2,
            )
        ref = self.schedules[0]
        for s in self.schedules:
            if s.period != ref.period or s.on_duration != ref.on_duration:
                raise ValueError("all elements must share period and on-duration")
        if not math.isclose(ref.period * self.mod_freq, 1.0, rel_tol=1e-9):
            raise ValueError("schedule period does not match mod_freq")

    @property
    def period(self) -> float:
        return self.schedules[0].period

    @property
    def on_duration(self) -> float:
        return self.schedules[0].on_duration

    def coefficients(self, h: int) -> np.ndarray:
        """Per-element coefficient of order ``h``."""
        return np.array([spectrum_analytic(s, h, h).values[0] for s in self.schedules])

    def with_schedules(self, schedules: Sequence[ModulationSchedule]) -> "ArrayConfig":
        return ArrayConfig(self.n_elements, self.spacing, self.carrier_freq, self.mod_freq, tuple(schedules))


def _check_angle(angle: float) -> None:
    if not -90.0 < angle < 90.0:
        raise InvalidAngleError(f"steering angle must lie in (-90, 90) degrees, got {angle}")


def synthesize_steering(
    n_elements: int, spacing: float, period: float, on_duration: float, steer_angle: float
) -> list[ModulationSchedule]:
    """Per-element SSB schedules that point the -1st harmonic beam at ``steer_angle``.

    Element ``n`` starts its first window at ``-n * spacing * sin(steer)`` of a
    period (wrapped), which cancels the progressive space phase at the steer
    angle. Element 0 is the timing reference.
    """
    _check_angle(steer_angle)
    check_duty(period, on_duration)
    u = math.sin(math.radians(steer_angle))
    return [
        build_ssb_schedule(period, on_duration, ((-n * spacing * u) % 1.0) * period)
        for n in range(n_elements)
    ]


def steered_array(
    n_elements: int = 8,
    spacing: float = 0.5,
    carrier_freq: float = 1.16e9,
    mod_freq: float = 1e6,
    tau_fraction: float = 0.25,
    steer_angle: float = 0.0,
) -> ArrayConfig:
    period = 1.0 / mod_freq
    schedules = synthesize_steering(n_elements, spacing, period, tau_fraction * period, steer_angle)
    return ArrayConfig(n_elements, spacing, carrier_freq, mod_freq, tuple(schedules))


def array_factor(cfg: ArrayConfig, h: int, theta):
    """Array factor at order ``h`` for angle(s) ``theta`` in degrees (isotropic elements)."""
    a = cfg.coefficients(h)
    th = np.radians(np.asarray(theta, dtype=float))
    n = np.arange(cfg.n_elements)
    steering = np.exp(2j * np.pi * cfg.spacing * np.multiply.outer(np.sin(th), n))
    af = steering @ a
    return complex(af) if np.ndim(af) == 0 else af


@dataclass(frozen=True)
class PatternCut:
    harmonic: int
    angles: np.ndarray
    values: np.ndarray
    power_db: np.ndarray


def pattern_cut(cfg: ArrayConfig, h: int, theta_grid) -> PatternCut:
    """Sample the order-``h`` pattern, normalized to the peak of the -1st harmonic cut."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.size == 0:
        raise EmptyGridError("angle grid is empty")
    if grid.min() < -90 or grid.max() > 90:
        raise InvalidAngleError("angle grid must lie within [-90, 90] degrees")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("angle grid must be strictly increasing")
    values = np.atleast_1d(array_factor(cfg, h, grid))
    main = values if h == -1 else np.atleast_1d(array_factor(cfg, -1, grid))
    ref = np.max(np.abs(main))
    if ref < 1e-15:
        raise DegenerateError("-1st harmonic pattern is identically zero")
    power = to_db(np.abs(values) / ref)
    if h == -1:
        # the reference sample is exactly 0 dB by definition
        power[np.argmax(np.abs(values))] = 0.0
    return PatternCut(h, grid, values, np.atleast_1d(power))


def angle_grid(step: float = 0.1, lo: float = -90.0, hi: float = 90.0) -> np.ndarray:
    """Inclusive grid with ``step`` spacing, built from integer multiples to avoid drift."""
    if not step > 0:
        raise ValueError("grid step must be positive")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return np.round(lo + step * np.arange(n + 1), 10)


def power_spectrum_at(cfg: ArrayConfig, theta: float, h_min: int, h_max: int) -> list[tuple[int, float]]:
    """Received harmonic levels toward ``theta``, with the -1st order at 0 dB."""
    if h_min > h_max:
        raise ValueError(f"empty order range [{h_min}, {h_max}]")
    ref = abs(array_factor(cfg, -1, theta))
    if ref < 1e-15:
        raise DegenerateError(f"-1st harmonic vanishes toward {theta} degrees")
    rows = []
    for h in range(h_min, h_max + 1):
        level = 0.0 if h == -1 else to_db(abs(array_factor(cfg, h, theta)) / ref)
        rows.append((h, level))
    return rows


class BeamMetrics(NamedTuple):
    peak_angle: float
    peak_db: float
    max_sidelobe_db: float
    beamwidth_3db: float


def _crossing(x0, y0, x1, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def beam_metrics(cut: PatternCut) -> BeamMetrics:
    """Peak, highest sidelobe and -3 dB beamwidth of a pattern cut.

    The main lobe extends from the peak down to the first local minimum on
    each side (a null, or a trough between lobes).
    """
    p = np.asarray(cut.power_db, dtype=float)
    x = np.asarray(cut.angles, dtype=float)
    if p.size < 3:
        raise DegenerateError("pattern cut needs at least 3 samples")
    i = int(np.argmax(p))
    peak = p[i]
    if np.count_nonzero(p >= peak - 1e-9) > 1 and np.ptp(p) < 1e-9:
        raise DegenerateError("pattern has no lobe structure")

    lo = i
    while lo > 0 and p[lo - 1] < p[lo]:
        lo -= 1
    hi = i
    while hi < p.size - 1 and p[hi + 1] < p[hi]:
        hi += 1

    side = np.concatenate([p[:lo], p[hi + 1:]])
    if side.size == 0:
        raise DegenerateError("no sidelobe inside the angle grid")
    max_sidelobe = float(side.max())

    level = peak - 3.0103
    left = right = None
    for k in range(i, lo, -1):
        if p[k - 1] < level <= p[k]:
            left = _crossing(x[k - 1], p[k - 1], x[k], p[k], level)
            break
    for k in range(i, hi):
        if p[k + 1] < level <= p[k]:
            right = _crossing(x[k + 1], p[k + 1], x[k], p[k], level)
            break
    if left is None or right is None:
        raise DegenerateError("main lobe does not fall 3 dB inside the grid")
    return BeamMetrics(float(x[i]), float(peak), max_sidelobe, float(right - left))
