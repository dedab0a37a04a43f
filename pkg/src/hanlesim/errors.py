"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A physical parameter is outside its admissible range."""


class ConfigError(ValueError):
    """A scan configuration is malformed; the message names the field."""


class SolverError(RuntimeError):
    """A linear solve failed or is too ill-conditioned to trust."""


class IntegrationError(RuntimeError):
    """A time-domain integration produced non-finite or non-physical output."""
