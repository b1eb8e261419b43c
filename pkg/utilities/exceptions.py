"""
Error hierarchy shared by every package.

Configuration errors map to CLI exit code 2, numerical errors to exit code 3.
"""


class KerrOscillatorError(Exception):
    """Base class for all library errors"""


class ConfigurationError(KerrOscillatorError, ValueError):
    """Invalid run configuration or command-line input"""


class ParameterError(KerrOscillatorError, ValueError):
    """Physically invalid parameter value"""


class NumericalError(KerrOscillatorError):
    """Base class for failures of a numerical routine"""


class TruncationError(NumericalError):
    """The Fock-space truncation is too small for the requested quantity"""


class DimensionMismatch(NumericalError):
    """Objects from Fock spaces of different dimension were combined"""


class StructureError(NumericalError):
    """An operator violates the expected symmetry-sector support"""


class NoFiniteStationaryPoint(NumericalError):
    """Only the origin is stationary for these parameters"""


class InstabilityError(NumericalError):
    """The quadratic expansion around the stationary point is unstable"""


class NonPositiveGap(NumericalError):
    """A gap series contains a non-positive value and cannot be log-fitted"""


class QuadratureError(NumericalError):
    """A position grid is too coarse or too narrow for quadrature"""


class InvalidDensityMatrix(NumericalError):
    """A matrix is not a valid density matrix"""


class StiffnessError(NumericalError):
    """The adaptive integrator step collapsed"""


class DegenerateSteadyState(NumericalError):
    """The Liouvillian has no unique steady state"""


class ManifoldIdentificationError(NumericalError):
    """Energy manifolds are not separated well enough to be identified"""


class NoCrossing(NumericalError):
    """A time series never crosses the requested threshold"""


class WeakSeparationWarning(UserWarning):
    """Cat legs overlap too much for the large-amplitude approximation"""
