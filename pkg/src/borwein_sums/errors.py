"""Exception hierarchy shared by all modules."""


class BorweinError(Exception):
    """Base class for library errors."""


class InvalidSpecError(BorweinError, ValueError):
    """Parameters violate a precondition (non-prime p, bad residue, ...)."""


class BudgetExceededError(BorweinError):
    """A size or enumeration cap would be exceeded."""


class VerificationError(BorweinError):
    """Two independent computations disagree, or a proved claim fails."""
