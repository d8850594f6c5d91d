"""Exception types used across the package."""


class DomainError(ValueError):
    """An input is outside the physical domain of an operation."""


class ConfigError(Exception):
    """A run configuration, definition file, or name lookup is invalid."""
