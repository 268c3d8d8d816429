"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class AqwalkError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(AqwalkError, ValueError):
    """A parameter is outside its documented domain (CLI exit code 2)."""


class ResourceLimitError(AqwalkError, RuntimeError):
    """A request would exceed a configured resource cap (CLI exit code 3)."""


class FitDomainError(AqwalkError, ValueError):
    """A power-law fit cannot be performed on the given window (CLI exit code 4)."""
