"""Harmonic content of the switching waveform.

Coefficients follow the analysis convention

    A_h = (1/T_p) * integral over one period of U(t) exp(-j 2 pi h f_p t) dt

so the descending 90-degree staircase puts its power at ``h = -1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidDutyError, MissingOrderError, ScheduleError
from .waveform import STRUCTURAL, ModulationSchedule, check_duty, evaluate_waveform, validate_schedule

DEFAULT_ORACLE_SAMPLES = 10**6


def sinc(x):
    """Unnormalized sinc, sin(x)/x, equal to 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x == 0.0, 1.0, x)
    out = np.where(x == 0.0, 1.0, np.sin(safe) / safe)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class HarmonicSpectrum:
    """Complex Fourier coefficients for the contiguous orders ``h_min..h_max``."""

    mod_freq: float
    h_min: int
    values: np.ndarray

    @property
    def h_max(self) -> int:
        return self.h_min + len(self.values) - 1

    @property
    def orders(self) -> range:
        return range(self.h_min, self.h_max + 1)

    def __contains__(self, h) -> bool:
        return self.h_min <= h <= self.h_max

    def __getitem__(self, h: int) -> complex:
        if h not in self:
            raise MissingOrderError(h)
        return complex(self.values[h - self.h_min])

    def as_dict(self) -> dict[int, complex]:
        return {h: complex(v) for h, v in zip(self.orders, self.values)}

    def power(self) -> float:
        """Sum of |A_h|^2 over the stored orders."""
        return float(np.sum(np.abs(self.values) ** 2))


def pulse_coefficient(start, on_duration, period, state, h):
    """Fourier coefficient of one rectangular pulse of complex height ``state``.

    ``h`` may be an integer or an integer array.
    """
    if not 0 < on_duration <= period:
        raise InvalidDutyError(f"on_duration must lie in (0, period], got {on_duration}")
    if abs(state) > 1 + 1e-12:
        raise ValueError(f"|state| must not exceed 1, got {abs(state)}")
    tau = on_duration / period
    s = start / period
    h = np.asarray(h, dtype=float)
    out = state * tau * sinc(np.pi * h * tau) * np.exp(-1j * np.pi * h * (2 * s + tau))
    return complex(out) if np.ndim(out) == 0 else out


def _checked(s: ModulationSchedule) -> None:
    bad = [v for v in validate_schedule(s, require_ssb=False) if v.invariant in STRUCTURAL]
    if bad:
        raise ScheduleError(bad)


def spectrum_analytic(s: ModulationSchedule, h_min: int, h_max: int) -> HarmonicSpectrum:
    """Exact spectrum of ``s`` as the sum of its four pulse coefficients."""
    if h_min > h_max:
        raise ValueError(f"empty order range [{h_min}, {h_max}]")
    _checked(s)
    h = np.arange(h_min, h_max + 1)
    total = np.zeros(h.shape, dtype=complex)
    for start, state in zip(s.window_starts, s.phase_states):
        total += pulse_coefficient(start, s.on_duration, s.period, state, h)
    return HarmonicSpectrum(s.mod_freq, int(h_min), total)


def coefficient_at(s: ModulationSchedule, h: int) -> complex:
    return spectrum_analytic(s, h, h)[h]


def coefficient_closed_form(h: int, t1: float, on_duration: float, period: float) -> complex:
    """Closed-form coefficient of an SSB-constrained schedule.

    Valid whenever the windows keep the quarter/half period offsets, for any
    ``t1`` and duty up to a quarter period.
    """
    check_duty(period, on_duration)
    if h == 0:
        return 0j
    fp = 1.0 / period
    F = 2.0 / (h * math.pi) * math.sin(h * math.pi * on_duration * fp) * math.sin(h * math.pi / 2)
    # The leading minus matches the direct four-pulse sum; without it every
    # surviving order is off by a phase of pi.
    return -F * np.exp(-1j * math.pi * h * fp * (2 * t1 + on_duration)) * (
        np.exp(1j * math.pi * (1 + h) / 2) + 1
    )


def spectrum_numeric_oracle(s: ModulationSchedule, h: int, samples: int = DEFAULT_ORACLE_SAMPLES) -> complex:
    """Midpoint Riemann sum of the Fourier integral, sampling the waveform directly."""
    if samples < 10**4:
        raise ValueError("oracle needs at least 1e4 samples")
    t = (np.arange(samples) + 0.5) / samples
    u = evaluate_waveform(s, t * s.period)
    return complex(np.mean(u * np.exp(-2j * np.pi * h * t)))


def numeric_oracle_orders(
    s: ModulationSchedule, orders: Iterable[int], samples: int = DEFAULT_ORACLE_SAMPLES
) -> dict[int, complex]:
    """The same midpoint Riemann sum for many orders at once.

    One FFT of the sampled waveform evaluates the sum for every order; the
    half-sample offset of the midpoints is restored as a phase factor.
    """
    if samples < 10**4:
        raise ValueError("oracle needs at least 1e4 samples")
    t = (np.arange(samples) + 0.5) / samples
    u = evaluate_waveform(s, t * s.period)
    U = np.fft.fft(u) / samples
    return {int(h): complex(U[h % samples] * np.exp(-1j * np.pi * h / samples)) for h in orders}


def is_suppressed(h: int) -> bool:
    """True for the orders an ideal SSB schedule cancels: even h and h = 4k + 1."""
    return h % 2 == 0 or h % 4 == 1


def insertion_loss_db(on_duration: float, period: float) -> float:
    """Level of the -1st harmonic relative to an unmodulated unit carrier, in dB."""
    check_duty(period, on_duration)
    tau = on_duration / period
    if tau < 1e-12:
        return -math.inf
    return 20.0 * math.log10(4.0 * math.sin(math.pi * tau) / math.pi)


def total_power(s: ModulationSchedule) -> float:
    """Time-average power of the waveform; equals the sum of |A_h|^2 over all h."""
    return s.duty * sum(abs(c) ** 2 for c in s.phase_states)

