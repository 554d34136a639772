"""Exception types shared across the package."""


class SatakeError(Exception):
    """Base class for all package errors."""


class OddWeight(SatakeError):
    """Cusp form dimension requested at an odd weight."""


class CatalogExhausted(SatakeError):
    """A constituent outside the configured catalog range was requested."""


class NotSymplecticPair(SatakeError):
    """Root number requested for a pair whose tensor product is not symplectic."""


class UnsupportedProduct(SatakeError):
    """Product of atomic symbols with no rewrite rule or composite."""


class NotACharacter(SatakeError):
    """Highest-weight peeling hit an inconsistency (negative or non-dominant leading term)."""


class OutOfRange(SatakeError):
    """Index outside the valid range of an operation."""


class SideMismatch(SatakeError):
    """Full spin requested for an even block, or a half for an odd one."""


class Unrecognized(SatakeError):
    """A weight multiset could not be expressed in catalog motives.

    Carries the unconsumed residue as a list of exponent vectors.
    """

    def __init__(self, message, residue=()):
        super().__init__(message)
        self.residue = list(residue)


class MissingFact(SatakeError):
    """An externally sourced Euler-characteristic fact is required but absent."""


class UnsupportedRange(SatakeError):
    """Stratum formulas requested outside the calibrated (g, s) range."""


class ParseError(SatakeError):
    """Malformed golden data or catalog extension file."""


class GoldenMismatch(SatakeError):
    """Generated rows differ from the golden transcription."""
