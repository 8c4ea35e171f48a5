"""Exception types shared across the package."""


class DimensionError(ValueError):
    """A matrix, lattice or coefficient-vector size violates a contract."""


class DomainError(ValueError):
    """A parameter lies outside the domain an operation is defined on."""


class DegenerateSpectrumError(RuntimeError):
    """A spectral decomposition is unavailable (complex or degenerate)."""


class ConstructionError(RuntimeError):
    """The recurrent pattern construction produced an inconsistent result."""
