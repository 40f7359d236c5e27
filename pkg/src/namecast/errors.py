class NamecastError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(NamecastError):
    """Invalid configuration value or file."""


class LoadError(NamecastError):
    """Malformed or unusable input data file."""


class TrainingError(NamecastError):
    """Training could not produce a usable model."""
