"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific type that applies.
"""


class RangeError(ValueError):
    """A requested index or horizon lies outside the computable range."""


class DepthError(RangeError):
    """The binary word depth is too small for the requested horizon."""


class ConfigError(ValueError):
    """A run configuration is missing, malformed, or inconsistent."""


class OracleMismatch(RuntimeError):
    """Two independent computations of the same quantity disagree."""
