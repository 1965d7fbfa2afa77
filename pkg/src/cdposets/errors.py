"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary bad arguments; the classes here
mark conditions a caller may want to handle separately.
"""


class BudgetError(RuntimeError):
    """A construction would exceed the configured element budget."""


class GlueMismatchError(ValueError):
    """Parts glued at a rank disagree on the size of that level."""


class GlueInconsistentError(ValueError):
    """Glued parts induce conflicting comparabilities between shared levels."""


class NotCdExpressibleError(ValueError):
    """The poset's flag data does not reduce to a cd polynomial.

    Raised when some coefficient of the c/e expansion is nonzero on a rank
    set that is not a disjoint union of even intervals.  Carries the
    offending rank set as a bitmask in ``mask``.
    """

    def __init__(self, message: str, mask: int | None = None):
        super().__init__(message)
        self.mask = mask
