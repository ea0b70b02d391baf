"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: configuration/argument
problems -> 2, numerical failures -> 3, I/O failures -> 4.
"""


class NfedofError(Exception):
    """Base class for all package errors."""


class ArgumentError(NfedofError, ValueError):
    """Invalid argument or configuration value."""


class ConfigError(ArgumentError):
    """Malformed sweep/config input (unknown keys, bad combinations)."""


class NumericalError(NfedofError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result."""


class SingularityError(NumericalError):
    """Field evaluation requested too close to a source point."""


class DegenerateInputError(NumericalError):
    """Input is structurally degenerate (e.g. an all-zero channel)."""


class ResourceLimitError(NfedofError):
    """Requested computation exceeds the configured size guards."""
