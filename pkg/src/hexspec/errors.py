"""Exception types shared across the package."""


class HexspecError(Exception):
    """Base class for errors raised by hexspec."""


class DomainError(HexspecError, ValueError):
    """An argument is outside the mathematically admissible domain."""


class IntegrationError(HexspecError, RuntimeError):
    """The ODE integrator produced a non-finite state."""


class ConsistencyError(HexspecError, RuntimeError):
    """An internal cross-check failed (e.g. eigenvalue interlacing)."""
