"""Exception types raised across the toolkit.

The CLI maps these onto exit codes, so every error a caller can trigger
belongs to one of the families below.
"""


class MaskCryptError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgumentError(MaskCryptError, ValueError):
    pass


class InvalidModulusError(InvalidArgumentError):
    pass


class UndefinedGcdError(InvalidArgumentError):
    pass


class NotInvertibleError(InvalidArgumentError):
    """Raised by modular inversion; ``gcd`` holds the shared factor."""

    def __init__(self, a: int, m: int, gcd: int):
        super().__init__(f"{a} is not invertible mod {m} (gcd={gcd})")
        self.a = a
        self.m = m
        self.gcd = gcd


class CrtModuliError(InvalidArgumentError):
    pass


class InvalidElementError(InvalidArgumentError):
    pass


class InvalidSubgroupError(InvalidArgumentError):
    pass


class InconsistentFactorizationError(InvalidArgumentError):
    pass


class OrderUnavailableError(InvalidArgumentError):
    pass


class OutOfRangeError(InvalidArgumentError):
    pass


class NotInSubgroupError(InvalidArgumentError):
    pass


class ParameterConflictError(MaskCryptError, ValueError):
    """Mutually incompatible parameters (e.g. non-coprime subgroup orders)."""


class BadPublicExponentError(ParameterConflictError):
    pass


class SearchFailure(MaskCryptError, RuntimeError):
    """A randomized search ran out of attempts or had an empty range."""


class TooLargeError(MaskCryptError):
    """A brute-force computation exceeded its cap."""


class KeyFileError(MaskCryptError, ValueError):
    """A key or ciphertext file could not be parsed or failed validation."""
