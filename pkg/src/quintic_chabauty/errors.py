"""Exception types shared across the package."""


class CompositeResidual(ArithmeticError):
    """Trial division left a cofactor that could not be certified prime."""


class NoRealRoot(ValueError):
    """Even root of a negative integer requested."""


class PrecisionExhausted(ArithmeticError):
    """A p-adic result cannot be told apart from zero at the tracked precision."""


class RamificationMismatch(ArithmeticError):
    """Sum of two values whose pi-valuations differ modulo 10."""


class UnsupportedRamified(ValueError):
    """k-th root with p dividing k."""


class NonUnitLeadingTerm(ValueError):
    pass


class RamifiedExponent(ValueError):
    pass


class TailUnbounded(ArithmeticError):
    pass


class NoConvergence(RuntimeError):
    pass


class UnsupportedPrime(ValueError):
    pass


class ClassNotApplicable(ValueError):
    """The requested residue class has no Q_p-points for these parameters."""


class NotASquare(ValueError):
    pass


class ZeroReduction(ArithmeticError):
    """Every known coefficient reduces to zero modulo p."""


class UnknownTableEntry(KeyError):
    pass


class BadReduction(ValueError):
    pass


class IncompleteCover(RuntimeError):
    """No elimination clause applies; the case split would have a hole."""


class FixtureError(ValueError):
    pass
