"""Exception hierarchy shared across the library.

Two base categories matter to callers: ``ValidationError`` (bad input data,
broken axioms, malformed files) and ``CapError`` (an instance exceeds the
documented desk-scale limits or a search budget ran out).
"""


class PavingsError(Exception):
    """Base class for all library errors."""


class ValidationError(PavingsError, ValueError):
    """Input data is structurally invalid."""


class CapError(PavingsError, RuntimeError):
    """Instance exceeds a documented size cap or budget."""


# --- matroid construction / operations ---

class EmptyBases(ValidationError):
    pass


class UnequalBasisSizes(ValidationError):
    pass


class ExchangeAxiomViolated(ValidationError):
    pass


class InvalidRank(ValidationError):
    pass


class ElementOutOfRange(ValidationError):
    pass


class FormatError(ValidationError):
    """Malformed JSON payload for a matroid, design or witness file."""


# --- h-vectors ---

class BasisCountOutOfRange(ValidationError):
    pass


# --- monomials / multicomplexes ---

class DimensionMismatch(ValidationError):
    pass


class HrBelowF(ValidationError):
    """Top entry too small: no pure witness through the padding route."""


class HrAboveMax(ValidationError):
    """Top entry exceeds the number of monomials of that degree."""


# --- search caps and budgets ---

class BudgetExceeded(CapError):
    pass


class SizeCap(CapError):
    pass


class CapExceeded(CapError):
    pass


class NotCoprime(ValidationError):
    pass


# --- enumeration ---

class NoBases(ValidationError):
    """A block family covers every candidate basis."""


# --- designs ---

class UnequalBlockSizes(ValidationError):
    pass


class NotSteiner(ValidationError):
    pass


class InvalidLambda(ValidationError):
    pass
