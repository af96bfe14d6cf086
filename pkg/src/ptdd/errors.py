"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DomainError
(and subclasses) -> 3.
"""


class DomainError(ValueError):
    """Physically or mathematically invalid input."""


class ConfigError(ValueError):
    """Malformed or contradictory experiment configuration."""


class DegenerateStateError(DomainError):
    """Total population loss: a trace too small to normalize."""


class InvalidPulseError(DomainError):
    """A schedule pulse that is not unitary."""


class TrajectoryRangeError(DomainError):
    """A noise trajectory was queried outside its covered window."""
