"""Exceptions shared across the package."""


class WordchainError(ValueError):
    """Base class for all errors raised by this package."""


class CapExceededError(WordchainError):
    """An input is larger than the configured size budget allows."""


class SizeMismatchError(WordchainError):
    """Two words do not have the sizes an operation requires."""


class ZeroMassStateError(WordchainError):
    """A conditioning state has zero mass under the harmonic function."""
