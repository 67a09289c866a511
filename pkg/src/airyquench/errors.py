"""Exception taxonomy.

Input-contract violations derive from ValueError; failures of the numerical
validity checks (quadrature resolution, contour truncation budgets) derive
from NumericalValidityError so the CLI can map them to exit status 2.
"""


class AiryquenchError(Exception):
    pass


class RangeError(AiryquenchError, ValueError):
    """Argument outside the supported range of a special function."""


class DomainError(AiryquenchError, ValueError):
    """Argument outside the physical domain of an operation."""


class ShapeError(AiryquenchError, ValueError):
    """Fields on mismatched grids or with mismatched metadata."""


class InvalidConfigError(AiryquenchError, ValueError):
    """Parameter set does not define the requested problem."""


class GridCoverageError(AiryquenchError, ValueError):
    """Grid too short to support the requested spectral accuracy."""


class NumericalValidityError(AiryquenchError, RuntimeError):
    pass


class ResolutionError(NumericalValidityError):
    """Source sampling too coarse for the kernel phase at the requested time."""


class TruncationError(NumericalValidityError):
    """Oscillatory-integral node budget exhausted before convergence."""
