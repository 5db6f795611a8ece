"""Error types raised by rectcover.

Input-shaped errors also derive from ValueError so callers that only catch
ValueError keep working.
"""

from typing import Any, Optional


class RectCoverError(Exception):
    """Base class for every rectcover error"""


class PolygonError(RectCoverError, ValueError):
    """A vertex list does not describe a valid simple orthogonal polygon"""


class NotOrthogonalError(PolygonError):
    """Some polygon side is not axis-parallel"""


class SelfIntersectingError(PolygonError):
    """Polygon boundary touches or crosses itself"""


class CollinearRedundantVertexError(PolygonError):
    """Two consecutive polygon sides are parallel"""


class TooFewVerticesError(PolygonError):
    """Fewer than four vertices"""


class DegenerateRectError(RectCoverError, ValueError):
    """Rectangle with zero width or height, or non-integer coordinates"""


class NotContainedError(RectCoverError, ValueError):
    """Rectangle is not contained in the polygon"""


class EmptyKernelError(RectCoverError):
    """Family has an empty kernel"""


class KernelPartitionError(RectCoverError):
    """Family cannot be partitioned around the requested center"""


class NotProperError(KernelPartitionError):
    """Family is not proper"""


class NotInKernelError(KernelPartitionError):
    """Requested center is not a kernel member"""


class NotRootError(RectCoverError, ValueError):
    """Vertex is not the root of the DFS orientation"""


class InvalidInputSupportError(RectCoverError, ValueError):
    """Input graph is not a planar support of the family"""


class NotMaximalMemberError(RectCoverError, ValueError):
    """Subfamily member is not a maximal rectangle of the polygon"""


class BadParameterError(RectCoverError, ValueError):
    """Generator parameter out of range"""


class InputFormatError(RectCoverError, ValueError):
    """Polygon or graph document could not be parsed"""


class LimitExceededError(RectCoverError):
    """A search hit its node limit before proving optimality.

    Attributes:
        incumbent: best solution found before the limit was reached (may be None)
        nodes: number of search nodes expanded
    """

    def __init__(self, message: str, incumbent: Optional[Any] = None, nodes: int = 0):
        super().__init__(message)
        self.incumbent = incumbent
        self.nodes = nodes


class GenerationFailedError(RectCoverError):
    """Random polygon generation exhausted its retry budget"""

    def __init__(self, message: str, seed: int):
        super().__init__(f"{message} (seed={seed})")
        self.seed = seed
