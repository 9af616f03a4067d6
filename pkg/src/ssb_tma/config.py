"""Scenario configuration for the command-line tool.

The defaults describe the 8-element L-band demonstrator: 1.16 GHz carrier,
1 MHz modulation, half-wavelength spacing, quarter-period windows.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

from .array import ArrayConfig, steered_array
from .errors import ConfigError
from .nonideal import PhaseErrorModel, quantize_schedule


@dataclass(frozen=True)
class ScenarioConfig:
    carrier_hz: float = 1.16e9
    mod_hz: float = 1e6
    n_elements: int = 8
    spacing_wavelengths: float = 0.5
    tau_fraction: float = 0.25
    phase_error_bound_deg: float = 0.0
    clock_hz: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        def bad(msg):
            raise ConfigError(msg)

        for name in ("carrier_hz", "mod_hz", "spacing_wavelengths", "tau_fraction", "phase_error_bound_deg"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                bad(f"{name} must be a finite number, got {v!r}")
        if isinstance(self.n_elements, bool) or not isinstance(self.n_elements, int) or self.n_elements < 1:
            bad(f"n_elements must be a positive integer, got {self.n_elements!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            bad(f"seed must be a non-negative integer, got {self.seed!r}")
        if not 0 < self.mod_hz < self.carrier_hz:
            bad("need 0 < mod_hz < carrier_hz")
        if self.spacing_wavelengths <= 0:
            bad("spacing_wavelengths must be positive")
        if not 0 < self.tau_fraction <= 0.25:
            bad(f"tau_fraction must lie in (0, 0.25], got {self.tau_fraction}")
        if self.phase_error_bound_deg < 0:
            bad("phase_error_bound_deg must be non-negative")
        if self.clock_hz is not None and not (isinstance(self.clock_hz, (int, float)) and self.clock_hz > 0):
            bad(f"clock_hz must be a positive number, got {self.clock_hz!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e
        return cls.from_dict(data)

    def override(self, **changes) -> "ScenarioConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    def build_array(self, steer_deg: float = 0.0) -> ArrayConfig:
        """Steered array with the configured timing quantization and phase errors."""
        cfg = steered_array(
            self.n_elements, self.spacing_wavelengths, self.carrier_hz, self.mod_hz, self.tau_fraction, steer_deg
        )
        schedules = list(cfg.schedules)
        if self.clock_hz is not None:
            schedules = [quantize_schedule(s, 1.0 / self.clock_hz) for s in schedules]
        if self.phase_error_bound_deg > 0:
            model = PhaseErrorModel.draw(self.n_elements, self.phase_error_bound_deg, self.seed)
            schedules = model.apply(schedules)
        return cfg.with_schedules(schedules)
