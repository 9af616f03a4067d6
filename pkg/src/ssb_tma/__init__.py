"""Single-sideband time-modulated phased array driven by 2-bit phase shifters."""

__version__ = "0.1.0"

from .waveform import (  # noqa: E402
    ModulationSchedule,
    build_ssb_schedule,
    evaluate_waveform,
    shift_schedule,
    validate_schedule,
)
from .harmonics import (  # noqa: E402
    HarmonicSpectrum,
    coefficient_closed_form,
    insertion_loss_db,
    is_suppressed,
    pulse_coefficient,
    spectrum_analytic,
    spectrum_numeric_oracle,
    total_power,
)
from .array import (  # noqa: E402
    ArrayConfig,
    PatternCut,
    array_factor,
    beam_metrics,
    pattern_cut,
    power_spectrum_at,
    synthesize_steering,
)
from .nonideal import (  # noqa: E402
    PhaseErrorModel,
    apply_phase_errors,
    monte_carlo_residuals,
    quantize_schedule,
    residual_level_db,
)
