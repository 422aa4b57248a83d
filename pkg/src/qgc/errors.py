"""Exception types shared across the kernel."""


class QgcError(Exception):
    """Base class for all structured errors raised by the kernel."""


class RankMismatch(QgcError, ValueError):
    pass


class IndexOutOfRange(QgcError, IndexError):
    pass


class NotDominant(QgcError, ValueError):
    pass


class NotInPositiveCone(QgcError, ValueError):
    pass


class NonIntegralSecondArgument(QgcError, ValueError):
    """The second pairing slot only exists for root-lattice exponents."""


class WrongSide(QgcError, ValueError):
    """Skew-pairing argument contains letters from the other triangular half."""


class SingularGram(QgcError, ArithmeticError):
    """A graded Gram matrix came out singular; signals an implementation bug."""


class TruncationOverflow(QgcError, ArithmeticError):
    """An action left the truncated module."""


class NotInUb0(QgcError, ValueError):
    """Operand is not supported on balanced toral monomials."""


class NotInRootLattice(QgcError, ValueError):
    pass


class CentralityCheckFailed(QgcError, ArithmeticError):
    """A constructed candidate failed the adjoint-action centrality test."""


class NoSolution(QgcError, ArithmeticError):
    pass


class NonUniqueSolution(QgcError, ArithmeticError):
    pass
