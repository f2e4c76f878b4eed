"""Exception types shared across the package."""


class IQClusterError(Exception):
    """Base class for all errors raised by iqcluster."""


class BadRank(IQClusterError):
    """Rank parameter n is out of range for the requested construction."""


class BadIndex(IQClusterError):
    """A generator or vertex index is out of range."""


class FrozenVertex(IQClusterError):
    """Mutation was requested at a frozen vertex."""


class NonFrozenGlue(IQClusterError):
    """Amalgamation was requested along vertices that are not frozen."""


class OverlappingSubsets(IQClusterError):
    """Self-amalgamation subsets overlap."""


class SeedMismatch(IQClusterError):
    """Two torus elements live over different seeds."""


class NotMonomial(IQClusterError):
    """Renormalization applies to single-term elements only."""


class NoGluingRecord(IQClusterError):
    """The seed carries no record of how it was glued."""


class NotDivisible(IQClusterError):
    """An exact division in the torus (or of coefficients) failed."""


class NoUniformLeadingTerm(IQClusterError):
    """No term of the element divides all the others."""


class NotLaurent(IQClusterError):
    """The image of an element under a cluster transformation is not a
    Laurent polynomial in the target chart.

    ``stage`` is the index of the failing step when raised from a
    composite map.
    """

    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message)
        self.stage = stage


class NotReducedWord(IQClusterError):
    """The given word is not a reduced expression for the longest element."""


class UntrackedElement(IQClusterError):
    """A braid operator was applied to an element it cannot act on
    generator-wise."""
