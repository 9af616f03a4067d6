"""Exception hierarchy.

Every error carries the process exit code the CLI should use: 1 for bad
input or configuration, 2 for numerically degenerate situations.
"""


class TMAError(Exception):
    exit_code = 1


class InvalidPeriodError(TMAError, ValueError):
    pass


class InvalidDutyError(TMAError, ValueError):
    pass


class InvalidAngleError(TMAError, ValueError):
    pass


class InvalidClockError(TMAError, ValueError):
    pass


class EmptyGridError(TMAError, ValueError):
    pass


class ConfigError(TMAError, ValueError):
    pass


class ScheduleError(TMAError, ValueError):
    """A schedule breaks a structural invariant (overlap, duty, period)."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class MissingOrderError(TMAError, KeyError):
    def __str__(self):
        return f"harmonic order {self.args[0]} not in spectrum"


class DegenerateError(TMAError, ArithmeticError):
    exit_code = 2
