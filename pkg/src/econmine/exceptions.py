"""Exception types and the process exit codes they map to."""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3
EXIT_IO = 4


class EconmineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(EconmineError):
    """Invalid configuration: bad key, bad value, or missing input file."""


class InputError(EconmineError):
    """An input could not be read at the I/O level."""


class ValidationError(EconmineError):
    """File content violates its format contract (lexicons, queries, surveys)."""


class StageError(EconmineError):
    """A pipeline stage is missing its prerequisites or failed while running."""
