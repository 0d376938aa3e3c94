"""Exception hierarchy shared by all modules."""


class PatrolGamesError(Exception):
    """Base class for all library errors."""


class DomainError(PatrolGamesError):
    """Input is outside the mathematical domain of the operation."""


class UnsupportedRegimeError(DomainError):
    """The requested parameters fall in a regime with no implemented formula."""


class UnsupportedGeometryError(DomainError):
    """Geometry (norm kind / space kind) has no implemented closed form."""


class UnreachableError(DomainError):
    """Two points of a network are not connected by any path."""


class WalkBudgetError(PatrolGamesError):
    """Walk-family enumeration exceeded the configured budget.

    Carries whatever was enumerated so far so callers can still extract a
    partial lower bound.
    """

    def __init__(self, message, partial_walks=None):
        super().__init__(message)
        self.partial_walks = partial_walks or []
