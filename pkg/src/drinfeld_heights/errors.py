class ResourceLimitError(RuntimeError):
    """An object grew past a configured size bound (degree, row count, ...)."""


class ConfigError(ValueError):
    """A configuration value could not be parsed into a domain object."""


class InvariantViolation(AssertionError):
    """Two independent computations disagreed where they must agree."""
