"""Exception types shared across the package."""


class ZsIndexError(Exception):
    """Base class for every domain error raised by this package."""


class InvalidModulusError(ZsIndexError, ValueError):
    """The modulus does not define a usable cyclic group."""


class NotAUnitError(ZsIndexError, ValueError):
    """An operation required an argument coprime to the modulus."""


class InvalidFamilyError(ZsIndexError, ValueError):
    """No progression family exists: p**(s+1) does not divide the modulus."""


class HypothesesNotMetError(ZsIndexError, ValueError):
    """The certifying dispatcher was handed a sequence outside its hypotheses."""


class LemmaViolationError(ZsIndexError, RuntimeError):
    """A constructive search that must succeed on valid inputs came up empty.

    Firing on inputs that meet the documented preconditions is a bug or a
    genuine counterexample; the test suite treats it as a failure.
    """


class CertificateValidationError(ZsIndexError, RuntimeError):
    """An internally produced certificate failed re-validation (bug guard)."""


class UsageError(ZsIndexError, ValueError):
    """Malformed request to the campaign layer or the command line."""
