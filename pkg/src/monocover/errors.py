"""Exception hierarchy shared by all monocover modules."""


class MonocoverError(Exception):
    """Base class for all package-specific errors."""


class CompositeModulus(MonocoverError):
    pass


class EvenModulus(MonocoverError):
    pass


class TableBudgetExceeded(MonocoverError):
    pass


class IncompatibleDegrees(MonocoverError):
    pass


class NonSquare(MonocoverError):
    """Matrix operation that requires a square matrix."""


class NonIntegralDivision(MonocoverError):
    """Newton's identities produced a non-exact division: the power sums are
    not the power sums of any integer-coefficient monic polynomial."""


class ZeroVector(MonocoverError):
    pass


class IsotropicVector(MonocoverError):
    pass


class BadParity(MonocoverError):
    pass


class BadDegree(MonocoverError):
    pass


class NotAnIsometry(MonocoverError):
    pass


class UnsupportedDim(MonocoverError):
    pass


class DomainBudgetExceeded(MonocoverError):
    pass


class CertificationStalled(MonocoverError):
    """Randomized strong-generator search failed to reach the target order.
    Either the target is wrong or the generators do not generate it."""


class NotGeneralPosition(MonocoverError):
    pass


class SamplingExhausted(MonocoverError):
    pass


class DuplicatePoints(MonocoverError):
    pass


class InconsistentCounts(MonocoverError):
    pass


class NonSquareMultiplier(MonocoverError):
    pass


class DegreeBudgetExceeded(MonocoverError):
    pass


class SmallEllForEvenN(MonocoverError):
    pass
