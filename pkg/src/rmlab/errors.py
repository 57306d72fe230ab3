"""Exception hierarchy shared by every rmlab module."""


class RmlabError(Exception):
    """Base class for all library errors."""


class NonPrime(RmlabError, ValueError):
    pass


class NoIrreducibleFound(RmlabError):
    """No irreducible modulus was found; only possible through a bug."""


class SizeGuardExceeded(RmlabError):
    """An exhaustive routine refused to run because the search space is too large.

    Raise the limit with the ``RML_GUARD_OVERRIDE`` environment variable.
    """


class PartitionGuardExceeded(SizeGuardExceeded):
    pass


class DivisionByZero(RmlabError, ZeroDivisionError):
    pass


class TowerMismatch(RmlabError, ValueError):
    pass


class DimMismatch(RmlabError, ValueError):
    pass


class LengthMismatch(DimMismatch):
    pass


class NotASubspace(RmlabError, ValueError):
    pass


class DependentEmbedding(RmlabError, ValueError):
    pass


class DegenerateSystem(RmlabError):
    pass


class HypothesisViolated(RmlabError, ValueError):
    pass


class InternalInvariantViolated(RmlabError, AssertionError):
    """A theorem-guaranteed step failed; indicates a bug, not bad input."""


class NotGkp(HypothesisViolated):
    pass


class DirectSumFailure(RmlabError):
    """The left null spaces of G*A_i do not form a direct sum.

    This is a legitimate verdict (the code is not MRD(l) at these parameters),
    not a bug.
    """


class SpecInvariantViolated(RmlabError, ValueError):
    pass


class Disagreement(RmlabError):
    """Independent checkers of equivalent properties disagreed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
