"""Shared exception types."""


class CapExceededError(RuntimeError):
    """A configured resource cap (modulus, depth, element count) was exceeded."""


class ConfigError(ValueError):
    """Invalid command-line or config-file input."""


class InternalInvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
