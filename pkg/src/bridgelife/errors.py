"""Exception and warning types shared by every module."""


class DomainError(ValueError):
    """An input lies outside the domain of the model or operation."""


class MeasurementInconsistentError(DomainError):
    """Measured values combine into a physically impossible result."""


class ModelInconsistentError(DomainError):
    """Model parameters make the governing equation degenerate."""


class SamplingError(RuntimeError):
    """Rejection sampling could not satisfy the truncation bounds."""


class InfeasibleError(RuntimeError):
    """An optimization problem has no feasible point.

    ``certificate`` holds the phase-1 dual multipliers when available.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class UnboundedError(RuntimeError):
    """An optimization problem has an unbounded objective."""


class SchemaError(ValueError):
    """An input file does not follow its documented schema."""


class DegenerateInputWarning(UserWarning):
    """A result was clamped because the inputs are outside the empirical range."""
