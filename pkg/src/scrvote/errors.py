"""Exception types shared across the package."""


class ScrvoteError(Exception):
    """Base class for all library errors."""


class ProfileError(ScrvoteError):
    """A profile or order violates a structural invariant."""


class UnrankedCandidateError(ScrvoteError):
    """A rank was requested for a candidate the order does not rank."""


class EmptyRestrictionError(ScrvoteError):
    """A profile restriction to the empty candidate set was requested."""


class ModeError(ScrvoteError):
    """An operation received a profile kind it does not support."""


class SizeGuardError(ScrvoteError):
    """A weak-order enumeration exceeded the configured size limits."""


class StallError(ScrvoteError):
    """A sequential rule cannot fill the requested number of seats."""


class BudgetExceededError(ScrvoteError):
    """A brute-force enumeration exceeded its configured budget."""


class NonMonotoneRuleError(ScrvoteError):
    """A rule expected to be committee monotone dropped a winner.

    ``k`` is the smallest committee size whose winners are not all kept
    at size ``k + 1``.
    """

    def __init__(self, k: int, dropped: int):
        super().__init__(f"committee of size {k} is not contained in committee of size {k + 1}")
        self.k = k
        self.dropped = dropped


class ProfileParseError(ScrvoteError):
    """A profile file could not be parsed."""
