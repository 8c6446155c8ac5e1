"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold.

    Raised instead of silently returning a wrong answer, e.g. when a
    partition is requested for a coloring that contains a rainbow
    triangle, or when a vertex pair is not monochromatically complete
    to the rest of the graph.
    """
