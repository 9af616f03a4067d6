"""Four-state periodic switching waveform of a 2-bit phase-shifter modulator.

During one modulation period ``T_p`` the phase shifter visits four states,
each for ``on_duration`` seconds starting at its window start. Times are
stored in seconds, reduced to ``[0, T_p)``; arithmetic is done on fractions
of the period so results do not depend on the absolute time scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidDutyError, InvalidPeriodError

#: Relative tolerance (fraction of a period) for modular time comparisons.
TIME_TOL = 1e-9

NOMINAL_STATES = (1 + 0j, 1j, -1 + 0j, -1j)


def wrap(t: float, period: float) -> float:
    """Reduce ``t`` into ``[0, period)``."""
    r = t % period
    return 0.0 if r >= period else r


def _circular_distance(a: float, b: float) -> float:
    """Distance between two fractions of a period on the unit circle."""
    d = (a - b) % 1.0
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class ModulationSchedule:
    """One element's switching plan.

    ``window_starts[k]`` is when ``phase_states[k]`` is switched on; each
    window is half-open, ``[t_k, t_k + on_duration)`` modulo the period.
    """

    period: float
    on_duration: float
    window_starts: tuple[float, float, float, float]
    phase_states: tuple[complex, complex, complex, complex] = NOMINAL_STATES
    _fractions: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.window_starts) != 4 or len(self.phase_states) != 4:
            raise ValueError("a schedule has exactly four windows")
        if not self.period > 0:
            raise InvalidPeriodError(f"period must be positive, got {self.period}")
        starts = tuple(wrap(float(t), self.period) for t in self.window_starts)
        object.__setattr__(self, "window_starts", starts)
        object.__setattr__(self, "phase_states", tuple(complex(c) for c in self.phase_states))
        object.__setattr__(self, "on_duration", float(self.on_duration))
        object.__setattr__(self, "_fractions", tuple(t / self.period for t in starts))

    @property
    def mod_freq(self) -> float:
        return 1.0 / self.period

    @property
    def start_fractions(self) -> tuple[float, ...]:
        return self._fractions

    @property
    def duty(self) -> float:
        """On-duration as a fraction of the period."""
        return self.on_duration / self.period


def check_duty(period: float, on_duration: float, limit: float = 0.25) -> None:
    if not period > 0:
        raise InvalidPeriodError(f"period must be positive, got {period}")
    if not 0 < on_duration <= limit * period * (1 + TIME_TOL):
        raise InvalidDutyError(
            f"on_duration must lie in (0, {limit:g}*period]; got {on_duration / period:.9g}*period"
        )


def build_ssb_schedule(period: float, on_duration: float, t1: float) -> ModulationSchedule:
    """Build the SSB-constrained schedule whose first window starts at ``t1``.

    The other windows follow from the quarter/half period offsets:
    ``t2 = t1 - T/4``, ``t3 = t1 + T/2``, ``t4 = t1 + T/4``.
    """
    check_duty(period, on_duration)
    f1 = wrap(t1 / period, 1.0)
    fracs = (f1, f1 - 0.25, f1 + 0.5, f1 + 0.25)
    starts = tuple(wrap(f, 1.0) * period for f in fracs)
    return ModulationSchedule(period, on_duration, starts, NOMINAL_STATES)


def evaluate_waveform(s: ModulationSchedule, t):
    """Value of the modulation function at time(s) ``t``.

    Returns the active phase state, or 0 between windows. Accepts a scalar or
    an array of times.
    """
    scalar = np.ndim(t) == 0
    x = np.mod(np.asarray(t, dtype=float) / s.period, 1.0)
    out = np.zeros(x.shape, dtype=complex)
    tau = s.duty
    offsets = [np.mod(x - start, 1.0) for start in s.start_fractions]
    for d, state in zip(offsets, s.phase_states):
        out = np.where(d < tau - TIME_TOL, state, out)
    # instants within tolerance of a window start belong to that window, so a
    # boundary shared by two windows goes to the later one
    for d, state in zip(offsets, s.phase_states):
        out = np.where(d > 1.0 - 2 * TIME_TOL, state, out)
    return complex(out[()]) if scalar else out


def shift_schedule(s: ModulationSchedule, delta: float) -> ModulationSchedule:
    """Delay every window start by ``delta`` seconds (modulo the period)."""
    df = delta / s.period
    starts = tuple(wrap(f + df, 1.0) * s.period for f in s.start_fractions)
    return replace(s, window_starts=starts)


@dataclass(frozen=True)
class Violation:
    invariant: str
    detail: str

    def __str__(self):
        return f"{self.invariant}: {self.detail}"


STRUCTURAL = frozenset({"period", "duty", "overlap"})


def validate_schedule(s: ModulationSchedule, require_ssb: bool = True) -> list[Violation]:
    """List every broken invariant of ``s``; empty when the schedule is sound.

    ``require_ssb=False`` skips the quarter/half period spacing checks, which
    quantized or hand-built schedules are not expected to meet exactly.
    """
    out: list[Violation] = []
    if not s.period > 0:
        return [Violation("period", f"period={s.period}")]
    tau = s.duty
    if not 0 < tau <= 0.25 * (1 + TIME_TOL):
        out.append(Violation("duty", f"on_duration/period={tau:.9g} not in (0, 0.25]"))
    for k, c in enumerate(s.phase_states, 1):
        if abs(abs(c) - 1.0) > 1e-12:
            out.append(Violation("unit-magnitude", f"|c_{k}|={abs(c):.12g}"))
    f = s.start_fractions
    for i in range(4):
        for j in range(i + 1, 4):
            # windows [a, a+tau) and [b, b+tau) on the circle overlap iff the
            # forward gap from either start to the other is shorter than tau
            gap_ij = (f[j] - f[i]) % 1.0
            gap_ji = (f[i] - f[j]) % 1.0
            if min(gap_ij, gap_ji) < tau - TIME_TOL:
                out.append(
                    Violation(
                        "overlap",
                        f"windows {i + 1} and {j + 1} intersect (starts {f[i]:.9g}, {f[j]:.9g}, duty {tau:.9g})",
                    )
                )
    if require_ssb:
        checks = (
            ("t3-t1", f[2] - f[0], 0.5),
            ("t4-t2", f[3] - f[1], 0.5),
            ("t1-t2", f[0] - f[1], 0.25),
        )
        for name, diff, want in checks:
            err = _circular_distance(diff, want)
            if err > TIME_TOL:
                out.append(
                    Violation("SSB constraint", f"{name}={diff % 1.0:.9g}*T_p, expected {want}*T_p")
                )
    return out

