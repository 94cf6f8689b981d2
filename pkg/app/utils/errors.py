"""
Error types raised by the simulator and the experiment front end.
"""


class SchedError(ValueError):
    """Base class of every error raised by this package."""
    exit_code = 1


class DimensionError(SchedError):
    """A per-link vector does not have 2N entries."""


class UndefinedInputError(SchedError):
    """An input for which the requested quantity is undefined."""


class ProbabilityDomainError(SchedError):
    """A probability outside the open interval (0, 1)."""


class SaturatedCliqueError(SchedError):
    """The total arrival rate of a clique is not below 1."""


class ConfigurationError(SchedError):
    """A malformed scheduler, simulation or scenario configuration."""
    exit_code = 5


class UnknownKeyError(ConfigurationError):
    """A config file carries a key outside the documented schema."""
    exit_code = 2


class OutOfRangeError(ConfigurationError):
    """A config value lies outside its admissible range."""
    exit_code = 3


class UnwritablePathError(ConfigurationError):
    """An output path cannot be written."""
    exit_code = 4
