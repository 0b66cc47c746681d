"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SatsimError(Exception):
    exit_code = 1


class ConfigError(SatsimError, ValueError):
    """Malformed or invalid configuration."""

    exit_code = 2


class UnknownKeyError(ConfigError):
    pass


class NumericalError(SatsimError, ArithmeticError):
    """Result not representable in double precision, or a domain violation."""

    exit_code = 3


class NumericalRangeError(NumericalError, OverflowError):
    pass


class DomainError(NumericalError):
    pass


class UnsupportedRegimeError(NumericalError):
    pass


class DegenerateStateError(NumericalError):
    """All weights vanish (e.g. every stock is zero under reinforcement) or a
    metric is asked for on an all-zero vector."""


class SimulationTimeout(SatsimError, TimeoutError):
    exit_code = 3


class ExportError(SatsimError, OSError):
    exit_code = 4
