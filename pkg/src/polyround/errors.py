"""Exception hierarchy shared by every module."""


class PolyroundError(Exception):
    """Base class for all library errors."""


class ValidationError(PolyroundError, ValueError):
    """Malformed input (shapes, non-finite entries, bad JSON)."""


class NearZeroRow(ValidationError):
    def __init__(self, index: int, norm: float):
        super().__init__(f"constraint row {index} has norm {norm:.3g} <= 1e-12")
        self.index = index


class InfeasibleSystem(PolyroundError):
    """The inequality system has no solution."""


class UnboundedPolytope(PolyroundError):
    """A boundedness precondition was violated."""


class UnboundedRadius(UnboundedPolytope):
    """The Chebyshev LP reported an unbounded radius."""


class TooManyConstraints(PolyroundError):
    pass


class DegeneratePolytope(PolyroundError):
    pass


class NotEnoughVertices(PolyroundError):
    pass


class NotAFacet(PolyroundError):
    def __init__(self, index: int, reason: str = ""):
        msg = f"constraint {index} does not define a facet"
        super().__init__(f"{msg}: {reason}" if reason else msg)
        self.index = index


class UnsupportedDimension(PolyroundError):
    pass


class NotFullDimensional(PolyroundError):
    pass


class NumericalStall(PolyroundError):
    """Simplex iteration cap reached."""


class NoConvergence(PolyroundError):
    """Jacobi sweeps did not converge."""


class DegenerateDirection(PolyroundError):
    """No constraint is crossed along the witness direction."""


class SingularGram(PolyroundError):
    """A^T A is singular, so the flux system has no unique solution."""


class GenerationFailed(PolyroundError):
    pass
