"""Exception types shared across the package.

DomainError covers everything a caller can trigger with bad or unlucky input
(CLI exit code 1).  InternalConsistencyError marks situations where two
independent computations that must agree did not (CLI exit code 3); it is
never raised for user mistakes.
"""


class DomainError(ValueError):
    """Invalid argument or a mathematically impossible request."""


class PoleError(DomainError):
    """A pole of a rational map was hit (distinct from ordinary domain errors)."""


class CapacityError(DomainError):
    """Exact-arithmetic request beyond the configured size guard."""


class NotBipartiteError(DomainError):
    """Graph contains an odd cycle; the offending cycle is attached."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("graph is not bipartite, odd cycle: " + "-".join(self.cycle))


class NotStarShapedError(DomainError):
    """Graph is not a tree with at most one branching point."""


class ConvergenceError(DomainError):
    """Iterative solver failed to converge; carries the last residual."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class BracketError(DomainError):
    """Root bracketing failed; carries the function values at both ends."""

    def __init__(self, message, f_lo=None, f_hi=None):
        self.f_lo = f_lo
        self.f_hi = f_hi
        super().__init__(message)


class RegularVectorError(DomainError):
    """A singular root was required but the vector is regular/undetermined."""

    def __init__(self, message, classification=None):
        self.classification = classification
        super().__init__(message)


class ParityMismatchError(DomainError):
    """Witness sign and vertex parity violate the singular-object convention."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations that must agree disagreed."""
