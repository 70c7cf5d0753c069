"""Exception hierarchy shared by all modules."""


class PlanarQEDError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(PlanarQEDError, ValueError):
    """Invalid physical or configuration input."""


class ActiveMediumError(ValidationError):
    """Negative imaginary permittivity or permeability (gain medium)."""


class LosslessMediumError(ValidationError):
    """A lossless medium was passed to a routine that needs absorption.

    Exactly lossless left-handed media have no unique branch for the
    in-medium wavevector; use :mod:`planar_qed.ideal` instead.
    """


class DivergentPotentialError(PlanarQEDError, ArithmeticError):
    """Real part of the ideal Green tensor requested where it diverges."""


class NearPoleError(PlanarQEDError, ArithmeticError):
    """A reflection-coefficient denominator vanished at the given q."""

    def __init__(self, message, q=None):
        super().__init__(message)
        self.q = q


class ConvergenceError(PlanarQEDError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, message, worst_interval=None, error=None):
        super().__init__(message)
        self.worst_interval = worst_interval
        self.error = error


class InternalConsistencyError(PlanarQEDError, RuntimeError):
    """A result violated a physical invariant (e.g. negative decay rate)."""
