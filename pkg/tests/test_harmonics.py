import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ssb_tma.errors import InvalidDutyError, MissingOrderError, ScheduleError
from ssb_tma.harmonics import (
    coefficient_closed_form,
    insertion_loss_db,
    is_suppressed,
    numeric_oracle_orders,
    pulse_coefficient,
    spectrum_analytic,
    spectrum_numeric_oracle,
    total_power,
)
from ssb_tma.nonideal import apply_phase_errors
from ssb_tma.waveform import ModulationSchedule, build_ssb_schedule, shift_schedule

PEAK = 2 * math.sqrt(2) / math.pi


@pytest.fixture
def ideal():
    return build_ssb_schedule(1.0, 0.25, 0.25)


def riemann(f, n=10**6):
    t = (np.arange(n) + 0.5) / n
    return np.mean(f(t))


def test_pulse_dc():
    assert pulse_coefficient(0, 0.25, 1, 1, 0) == pytest.approx(0.25)


def test_pulse_sinc_null():
    assert abs(pulse_coefficient(0, 0.25, 1, 1, 4)) < 1e-16


def test_pulse_first_harmonic_against_integral():
    # 1e6-point midpoint sum of the defining integral, frozen
    oracle = riemann(lambda t: (t < 0.25) * np.exp(-2j * np.pi * t))
    assert abs(oracle - 0.22508 * cmath.exp(-1j * math.pi / 4)) < 1e-5
    got = pulse_coefficient(0, 0.25, 1, 1, 1)
    assert abs(got - oracle) < 1e-6
    assert abs(got) == pytest.approx(0.2250790790392765, abs=1e-12)


def test_pulse_rejects_duty():
    with pytest.raises(InvalidDutyError):
        pulse_coefficient(0, 1.5, 1, 1, 1)


def test_spectrum_ideal_values(ideal):
    sp = spectrum_analytic(ideal, -5, 5)
    assert abs(sp[0]) < 1e-15
    assert abs(sp[-1]) == pytest.approx(PEAK, abs=1e-12)
    assert abs(sp[3]) == pytest.approx(PEAK / 3, abs=1e-12)
    assert abs(sp[3]) == pytest.approx(0.30011, abs=1e-5)
    with pytest.raises(MissingOrderError):
        sp[6]


def test_spectrum_rejects_overlap():
    with pytest.raises(ScheduleError):
        spectrum_analytic(ModulationSchedule(1.0, 0.3, (0.25, 0.0, 0.75, 0.5)), -1, 1)


def test_closed_form_values():
    assert coefficient_closed_form(0, 0.1, 0.2, 1.0) == 0
    assert abs(coefficient_closed_form(-1, 0.0, 0.25, 1.0)) == pytest.approx(PEAK, abs=1e-12)
    for t1 in (0.0, 0.3, 0.77):
        for tau in (0.05, 0.25):
            assert abs(coefficient_closed_form(2, t1, tau, 1.0)) < 1e-15


@settings(max_examples=60, deadline=None)
@given(t1=st.floats(0, 1, exclude_max=True), tau=st.floats(1e-4, 0.25))
def test_closed_form_matches_sum(t1, tau):
    s = build_ssb_schedule(1.0, tau, t1)
    sp = spectrum_analytic(s, -21, 21)
    for h in sp.orders:
        assert abs(coefficient_closed_form(h, t1, tau, 1.0) - sp[h]) < 1e-12


def test_oracle_examples(ideal):
    a = spectrum_analytic(ideal, -1, -1)[-1]
    got = spectrum_numeric_oracle(ideal, -1, 10**6)
    assert abs(got - a) < 1e-4
    assert abs(abs(got) - PEAK) < 1e-4
    assert abs(spectrum_numeric_oracle(ideal, 0, 10**6)) < 1e-4
    zero = ModulationSchedule(1.0, 0.25, (0.25, 0.0, 0.75, 0.5), (0, 0, 0, 0))
    assert spectrum_numeric_oracle(zero, 3, 10**4) == 0


def test_fft_oracle_matches_direct_sum(ideal):
    s = apply_phase_errors(build_ssb_schedule(1.0, 0.17, 0.61), (3, -2, 7, 1))
    fast = numeric_oracle_orders(s, range(-6, 7), 10**5)
    for h, v in fast.items():
        assert abs(v - spectrum_numeric_oracle(s, h, 10**5)) < 1e-12


@pytest.mark.parametrize("h, want", [(0, True), (5, True), (-1, False), (3, False), (-5, False), (7, False),
                                     (1, True), (-3, True), (2, True), (-2, True)])
def test_is_suppressed(h, want):
    assert is_suppressed(h) is want


def test_suppression_matches_spectrum(ideal):
    sp = spectrum_analytic(ideal, -21, 21)
    for h in sp.orders:
        assert (abs(sp[h]) < 1e-12) == is_suppressed(h)


def test_surviving_magnitudes(ideal):
    sp = spectrum_analytic(ideal, -21, 21)
    for h in sp.orders:
        if not is_suppressed(h):
            assert abs(sp[h]) == pytest.approx(PEAK / abs(h), abs=1e-12)


def test_insertion_loss():
    assert insertion_loss_db(0.25, 1.0) == pytest.approx(-0.91, abs=0.005)
    eighth = insertion_loss_db(0.125, 1.0)
    assert eighth == pytest.approx(20 * math.log10(4 * math.sin(math.pi / 8) / math.pi), abs=1e-12)
    assert eighth == pytest.approx(-6.25, abs=0.01)
    s = build_ssb_schedule(1.0, 0.125, 0.0)
    assert 20 * math.log10(abs(spectrum_numeric_oracle(s, -1))) == pytest.approx(eighth, abs=1e-3)
    assert insertion_loss_db(1e-13, 1.0) == -math.inf
    with pytest.raises(InvalidDutyError):
        insertion_loss_db(0.3, 1.0)


def test_total_power():
    assert total_power(build_ssb_schedule(1.0, 0.25, 0.0)) == pytest.approx(1.0)
    assert total_power(build_ssb_schedule(1.0, 0.125, 0.0)) == pytest.approx(0.5)


def test_parseval_monotone(ideal):
    sp = spectrum_analytic(ideal, -2001, 2001)
    p = np.abs(sp.values) ** 2
    mid = 2001
    partial = [p[mid - H: mid + H + 1].sum() for H in range(0, 2002, 50)]
    assert all(b >= a for a, b in zip(partial, partial[1:]))
    assert abs(partial[-1] - 1.0) < 1e-3


@settings(max_examples=30, deadline=None)
@given(t1=st.floats(0, 1, exclude_max=True), tau=st.floats(1e-3, 0.25), delta=st.floats(-3, 3))
def test_time_shift_phase_law(t1, tau, delta):
    s = build_ssb_schedule(1.0, tau, t1)
    a = spectrum_analytic(s, -10, 10)
    b = spectrum_analytic(shift_schedule(s, delta), -10, 10)
    h = np.arange(-10, 11)
    assert np.max(np.abs(b.values - a.values * np.exp(-2j * np.pi * h * delta))) < 1e-12


@pytest.mark.parametrize("t1, tau", [(0.0, 0.25), (0.3, 0.11), (0.678, 0.2)])
def test_scale_invariance(t1, tau):
    a = spectrum_analytic(build_ssb_schedule(1.0, tau, t1), -21, 21).values
    b = spectrum_analytic(build_ssb_schedule(1e-6, tau * 1e-6, t1 * 1e-6), -21, 21).values
    assert np.max(np.abs(a - b)) < 1e-12
