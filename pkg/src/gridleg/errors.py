"""Exception types shared across the package."""


class GridLegError(Exception):
    """Base class for all gridleg errors."""


class InvalidInput(GridLegError):
    """Malformed external data: duplicate points, bad JSON, broken invariants."""


class PreconditionViolated(GridLegError):
    """A move was applied to a diagram that does not satisfy its precondition."""

    def __init__(self, kind: str, reason: str):
        super().__init__(f"{kind}: {reason}")
        self.kind = kind
        self.reason = reason


class EmptyDiagram(GridLegError):
    """Operation requires a nonempty diagram."""


class NotAKnot(GridLegError):
    """Diagram is not a knot diagram (2 vertices per line, single cycle)."""


class LoopEdge(GridLegError):
    """Edge contraction attempted on a loop."""


class BoundExceeded(GridLegError):
    """Exhaustive search bound exceeded."""


class FinalMismatch(GridLegError):
    """Replaying a move sequence did not reproduce its recorded endpoint."""


class InternalVerificationFailed(GridLegError):
    """A constructed certificate failed its own replay check; indicates a bug."""
