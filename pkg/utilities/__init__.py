"""
Imports all the necessary classes and functions from the utilities package.
"""

__version__ = "1.0.0"

from .exceptions import (
    KerrOscillatorError, ConfigurationError, ParameterError, NumericalError, TruncationError,
    DimensionMismatch, StructureError, NoFiniteStationaryPoint, InstabilityError, NonPositiveGap,
    QuadratureError, InvalidDensityMatrix, StiffnessError, DegenerateSteadyState,
    ManifoldIdentificationError, NoCrossing, WeakSeparationWarning,
)
from .typehints import (
    Tolerances, DEFAULT_TOLERANCES, ModelParams, FockSpace, StateVector, OperatorMatrix, DensityMatrix,
    PointKind, PhaseRegion, StationaryPoint, StationaryAmplitudes, Thresholds, SpectrumResult, GapFit,
    FrameParams, ManifoldSpectrum, AiryPair, GaussianParams, CatOverlap, CatBasis, NormalizationReport,
    TransitionTable, TransitionComparison, QutritCoords, RampKind, RampSpec, LindbladSpec, TimeSeries,
    PreparationResult, SteadyStateComparison,
)
from .metrics import DecayAnalyzer, decay_constant
from .abstracts import BaseSolver, IEigenSolver, IEvolutionSolver, ISteadyStateSolver, ICheck
from .functions import format_elapsed_time, wrap_phase, sector_of, hermitize, trace_distance
from .logger import configure_logging
