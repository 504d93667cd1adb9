"""Exception types shared across the package."""


class GrtError(Exception):
    """Base class for all package errors."""


class DimensionError(GrtError, ValueError):
    """Leg labels or local dimensions do not match."""


class DegenerateTensorError(GrtError, ValueError):
    """A tensor or reduction has zero norm where a positive one is needed."""


class ConstraintError(GrtError, ValueError):
    """A graph, clique or hyperedge argument is invalid."""


class ParameterError(GrtError, ValueError):
    """A family parameter lies outside its valid range."""


class BudgetError(GrtError, ValueError):
    """A requested computation exceeds the supported size."""
