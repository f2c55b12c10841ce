"""Exception types shared across the package.

Most errors signal violated preconditions of exact operations; a few
(SearchTooLargeError, TooLargeError) mark feasibility caps of exhaustive
solvers and checkers.
"""


class CdlpError(Exception):
    """Base class for all package errors."""


class NotPrimeError(CdlpError):
    """A value required to be prime is not."""


class NoPrimeError(CdlpError):
    """No prime exists below the requested bound."""


class NonInvertibleError(CdlpError):
    """Attempted to invert zero (or a non-unit) modulo p."""


class NoLogarithmError(CdlpError):
    """Discrete logarithm of zero requested."""


class TooLargeError(CdlpError):
    """Input exceeds a documented desk-scale cap."""


class ModulusMismatchError(CdlpError):
    """Operands live over different moduli."""


class EmptySetError(CdlpError):
    """Operation requires a nonempty set."""


class UnknownEncodingError(CdlpError):
    """A label was never output by this oracle instance."""


class BudgetExceededError(CdlpError):
    """Adversary exceeded its declared query budget."""


class InsufficientElementsError(CdlpError):
    """Set too small for the requested covering fraction."""


class SearchTooLargeError(CdlpError):
    """Exhaustive solver cap exceeded; use bounds instead.

    When the modulus is within range but no witness exists up to the
    size cap, `refuted_up_to` holds the largest size exhaustively ruled
    out (the true complexity is strictly larger).
    """

    def __init__(self, message, refuted_up_to=None):
        super().__init__(message)
        self.refuted_up_to = refuted_up_to


class UncertifiedSetError(CdlpError):
    """Certificate bound requested without a verified certificate."""


class InvalidOrderError(CdlpError):
    """Submatrix dimensions must satisfy t <= s."""


class NoIntersectionError(CdlpError):
    """Lines are parallel or equal."""


class AtInfinityError(CdlpError):
    """Intersection point lies on the line at infinity."""


class DegenerateError(CdlpError):
    """Configuration degenerates; completion not determined."""


class WitnessSearchFailedError(CdlpError):
    """Bounded search for a realizing configuration failed."""


class PreconditionFailedError(CdlpError):
    """Required coincidences absent from the configuration."""


class SamplingFailedError(CdlpError):
    """Rejection sampling exceeded its retry cap."""
