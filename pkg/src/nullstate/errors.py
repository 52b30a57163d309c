"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the formula."""


class PreconditionError(ValueError):
    """A documented precondition of an operation is violated."""


class TruncationError(RuntimeError):
    """A series truncation could not certify the requested tail tolerance."""

    def __init__(self, message, achieved_bound=None, n_terms=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound
        self.n_terms = n_terms


class DegenerateFitError(RuntimeError):
    """A regression had no usable samples (e.g. the field vanished on the grid)."""
