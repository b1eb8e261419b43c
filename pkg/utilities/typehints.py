# Import dataclass helpers for the immutable domain records
from dataclasses import dataclass, field, replace
# Import enumerations for closed sets of labels
from enum import Enum
# Import typing hints for complex data structures
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

# Import numpy for all array-valued fields
import numpy as np

# Import the error hierarchy shared by every package
from utilities.exceptions import DimensionMismatch, InvalidDensityMatrix, ParameterError


# Numerical tolerances section begins
@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the library and echoed into run manifests"""

    # Hermiticity threshold for operator flags
    hermitian: float = 1e-12
    # Unitarity threshold on the interior block
    unitary: float = 1e-9
    # Density-matrix validity thresholds
    density_hermitian: float = 1e-10
    density_trace: float = 1e-8
    density_positivity: float = 1e-8
    # Zero threshold for Hessian eigenvalues, multiplied by U squared
    hessian_zero: float = 1e-9
    # Relative and absolute tolerance for the adaptive integrator
    integrator_rtol: float = 1e-8
    integrator_atol: float = 1e-10
    # Smallest admissible integrator step
    min_step: float = 1e-12
    # Agreement required between the two steady-state methods
    steady_state_agreement: float = 1e-6

    def as_dict(self) -> Dict[str, float]:
        # Return a plain mapping for serialization
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


# Default tolerance set shared by the library
DEFAULT_TOLERANCES = Tolerances()


# Physical model section begins
@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the oscillator in units of the Kerr strength"""

    # Detuning between oscillator and one third of the pump frequency
    delta: float
    # Three-photon pump amplitude G
    pump: float
    # Single-photon loss rate
    kappa: float = 0.0
    # Rate of the engineered state-selective dissipation
    kappa_e: float = 0.0
    # Kerr strength U, the unit of energy
    kerr: float = 1.0

    def __post_init__(self):
        # Reject unphysical parameter values as early as possible
        if not self.kerr > 0:
            raise ParameterError(f"kerr must be positive, got {self.kerr}")
        if self.pump < 0:
            raise ParameterError(f"pump must be non-negative, got {self.pump}")
        if self.kappa < 0 or self.kappa_e < 0:
            raise ParameterError(f"dissipation rates must be non-negative, got {self.kappa}, {self.kappa_e}")
        if not all(np.isfinite([self.delta, self.pump, self.kappa, self.kappa_e, self.kerr])):
            raise ParameterError("all parameters must be finite")

    @property
    def g(self) -> float:
        # Pump in units of the Kerr strength
        return self.pump / self.kerr

    def with_changes(self, **changes) -> "ModelParams":
        # Return a copy with selected fields replaced
        return replace(self, **changes)

    def as_dict(self) -> Dict[str, float]:
        return {"delta": self.delta, "pump": self.pump, "kappa": self.kappa,
                "kappa_e": self.kappa_e, "kerr": self.kerr}


# Fock-space linear algebra section begins
@dataclass(frozen=True)
class FockSpace:
    """Truncated Fock space holding levels 0..dim-1"""

    # Number of Fock levels kept
    dim: int

    def __post_init__(self):
        # The model couples n to n +/- 3, so fewer than four levels is meaningless
        if int(self.dim) != self.dim or self.dim < 4:
            raise ParameterError(f"FockSpace dim must be an integer >= 4, got {self.dim}")

    @property
    def guard(self) -> int:
        # Size of the top guard band excluded from unitarity checks
        return 3 * int(np.ceil(self.dim / 10))

    @property
    def interior(self) -> int:
        # Number of levels below the guard band
        return self.dim - self.guard

    def levels(self) -> np.ndarray:
        return np.arange(self.dim)

    def doubled(self) -> "FockSpace":
        return FockSpace(2 * self.dim)

    def enlarged(self, extra: int) -> "FockSpace":
        return FockSpace(self.dim + extra)


def _check_dims(left: int, right: int) -> None:
    # Shared dimension guard for every binary operation
    if left != right:
        raise DimensionMismatch(f"dimension mismatch: {left} != {right}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Ket in a truncated Fock space"""

    # Complex Fock amplitudes
    amplitudes: np.ndarray

    def __post_init__(self):
        # Freeze a complex copy so callers cannot mutate the state
        data = np.array(self.amplitudes, dtype=complex).reshape(-1)
        data.setflags(write=False)
        object.__setattr__(self, "amplitudes", data)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        norm = self.norm()
        if norm == 0:
            raise InvalidDensityMatrix("cannot normalize the zero vector")
        return StateVector(self.amplitudes / norm)

    def inner(self, other: "StateVector") -> complex:
        # Conjugate-linear in the left argument
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __add__(self, other: "StateVector") -> "StateVector":
        _check_dims(self.dim, other.dim)
        return StateVector(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "StateVector") -> "StateVector":
        _check_dims(self.dim, other.dim)
        return StateVector(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar: complex) -> "StateVector":
        return StateVector(scalar * self.amplitudes)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense operator on a truncated Fock space with structural flags"""

    # Complex dim x dim matrix
    entries: np.ndarray
    # Set when the operator is Hermitian
    hermitian: bool = False
    # Set when the operator is unitary on the interior block
    unitary: bool = False

    def __post_init__(self):
        data = np.array(self.entries, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DimensionMismatch(f"operator must be square, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "entries", data)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, hermitian=self.hermitian, unitary=self.unitary)

    def apply(self, state: StateVector) -> StateVector:
        _check_dims(self.dim, state.dim)
        return StateVector(self.entries @ state.amplitudes)

    def expectation(self, state: StateVector) -> complex:
        _check_dims(self.dim, state.dim)
        return complex(np.vdot(state.amplitudes, self.entries @ state.amplitudes))

    def __matmul__(self, other: Union["OperatorMatrix", StateVector]):
        # Operator products keep no flags; states are mapped through
        if isinstance(other, StateVector):
            return self.apply(other)
        _check_dims(self.dim, other.dim)
        return OperatorMatrix(self.entries @ other.entries)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_dims(self.dim, other.dim)
        return OperatorMatrix(self.entries + other.entries,
                              hermitian=self.hermitian and other.hermitian)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_dims(self.dim, other.dim)
        return OperatorMatrix(self.entries - other.entries,
                              hermitian=self.hermitian and other.hermitian)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        real = np.isreal(scalar)
        return OperatorMatrix(scalar * self.entries, hermitian=self.hermitian and bool(real))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix"""

    # Complex dim x dim matrix
    entries: np.ndarray

    def __post_init__(self):
        data = np.array(self.entries, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise InvalidDensityMatrix(f"density matrix must be square, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "entries", data)
        self.validate()

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        # Check the three defining properties of a physical state
        rho = self.entries
        if np.max(np.abs(rho - rho.conj().T)) > tolerances.density_hermitian:
            raise InvalidDensityMatrix("density matrix is not Hermitian")
        trace = np.trace(rho).real
        if abs(trace - 1.0) > tolerances.density_trace:
            raise InvalidDensityMatrix(f"density matrix trace is {trace}, expected 1")
        smallest = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
        if smallest < -tolerances.density_positivity:
            raise InvalidDensityMatrix(f"density matrix has negative eigenvalue {smallest:.3e}")

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def expectation(self, operator: OperatorMatrix) -> complex:
        _check_dims(self.dim, operator.dim)
        return complex(np.trace(self.entries @ operator.entries))

    def population(self, state: StateVector) -> float:
        _check_dims(self.dim, state.dim)
        return float(np.vdot(state.amplitudes, self.entries @ state.amplitudes).real)

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)


# Semiclassical section begins
class PointKind(Enum):
    """Hessian classification of a stationary point"""

    MAXIMUM = "maximum"
    MINIMUM = "minimum"
    SADDLE = "saddle"


class PhaseRegion(Enum):
    """Phase of the meta-potential counted by its local maxima"""

    SINGLE_MAXIMUM = "SingleMaximum"
    FOUR_MAXIMA = "FourMaxima"
    THREE_MAXIMA = "ThreeMaxima"


@dataclass(frozen=True)
class StationaryPoint:
    """Stationary point of the meta-potential"""

    # Complex amplitude of the point
    amplitude: complex
    # Hessian classification
    kind: PointKind
    # Meta-potential value at the point
    energy: float
    # Set when a Hessian eigenvalue is within tolerance of zero
    degenerate: bool = False


@dataclass(frozen=True)
class StationaryAmplitudes:
    """Magnitudes and phases of the finite stationary points"""

    # Magnitude of the maxima branch
    mag_plus: float
    # Magnitude of the saddle branch
    mag_minus: float
    # Phases of the maxima branch
    plus_phases: Tuple[float, float, float]
    # Phases of the saddle branch (shifted by pi for negative detuning)
    minus_phases: Tuple[float, float, float]
    # Signed saddle magnitude as returned by the quadratic root
    signed_minus: float

    def plus_points(self) -> List[complex]:
        return [self.mag_plus * np.exp(1j * phi) for phi in self.plus_phases]

    def minus_points(self) -> List[complex]:
        return [self.mag_minus * np.exp(1j * phi) for phi in self.minus_phases]


@dataclass(frozen=True)
class Thresholds:
    """Characteristic detunings and pumps of the phase diagram"""

    delta_th: float
    g_th: float
    fourfold_delta: float
    zero_squeeze_delta: float


# Spectrum section begins
@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Sector-labelled quasi-energies sorted descending"""

    # Quasi-energies, index 0 is the ground state (highest quasi-energy)
    energies: np.ndarray
    # Symmetry sector of every level
    sectors: np.ndarray
    # Eigenvectors stored column-wise in the same order
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def state(self, index: int) -> StateVector:
        return StateVector(self.vectors[:, index])

    def sector_levels(self, k: int) -> np.ndarray:
        # Indices of the levels of sector k, in descending energy order
        return np.flatnonzero(self.sectors == k)

    def top_of_sector(self, k: int) -> StateVector:
        return self.state(int(self.sector_levels(k)[0]))

    def top_energy(self, k: int) -> float:
        return float(self.energies[self.sector_levels(k)[0]])


@dataclass(frozen=True)
class GapFit:
    """Exponential fit of a gap series"""

    rate: float
    intercept: float
    r_squared: float


# Analytic states section begins
@dataclass(frozen=True)
class FrameParams:
    """Quadratic-fluctuation parameters around a stationary point"""

    omega: float
    lam: float
    stable: bool
    # Signed amplitude of the expansion point
    amplitude: float


@dataclass(frozen=True)
class ManifoldSpectrum:
    """Harmonic ladder of the quadratic frame"""

    # Level spacing Omega
    Omega: float
    # Frame frequency omega
    omega: float
    # Semiclassical energy E(alpha_+) of the expansion point
    offset: float

    def level(self, n: int | np.ndarray) -> float | np.ndarray:
        # Energy relative to the expansion point, -(Omega n + (Omega - omega) / 2)
        return -(self.Omega * np.asarray(n) + 0.5 * (self.Omega - self.omega))

    def absolute_level(self, n: int | np.ndarray) -> float | np.ndarray:
        return self.offset + self.level(n)


@dataclass(frozen=True, eq=False)
class AiryPair:
    """Normalized Airy-Gaussian wavefunctions on a position grid"""

    x: np.ndarray
    phi_a: np.ndarray
    phi_b: np.ndarray
    # <phi_A|phi_B> by quadrature
    overlap: float
    # Relative residual of the position-space dark-state equation
    ode_residual: float


@dataclass(frozen=True)
class GaussianParams:
    """Displacement and squeezing of a squeezed coherent state"""

    # Displacement magnitude
    alpha_mag: float
    # Displacement phase
    phi: float
    # Signed squeezing magnitude
    r: float
    # Squeezing phase
    theta: float

    @property
    def alpha(self) -> complex:
        return self.alpha_mag * np.exp(1j * self.phi)

    @property
    def xi(self) -> complex:
        return self.r * np.exp(1j * self.theta)


@dataclass(frozen=True)
class CatOverlap:
    """Magnitude and phase of the overlap between neighbouring squeezed coherent states"""

    A: float
    Theta: float

    @property
    def complex_value(self) -> complex:
        return self.A * np.exp(1j * self.Theta)


@dataclass(frozen=True, eq=False)
class CatBasis:
    """Three-legged squeezed cat states with their normalizations"""

    # The three sector-projected states
    cats: Tuple[StateVector, StateVector, StateVector]
    # Closed-form normalization factors N_k
    norms: np.ndarray
    # Overlap magnitude and phase between neighbouring legs
    overlap: CatOverlap
    # Numerically measured normalizations 1 / (3 ||Pi_k zeta_0||)
    numeric_norms: np.ndarray = field(default_factory=lambda: np.zeros(3))


@dataclass(frozen=True)
class NormalizationReport:
    """Series normalization against a closed special-function form"""

    series: float
    closed_form: float
    relative_deviation: float

    @property
    def agrees(self) -> bool:
        return self.relative_deviation < 1e-6


# Qutrit section begins
@dataclass(frozen=True, eq=False)
class TransitionTable:
    """Ladder-operator matrix elements on the cat basis"""

    # Matrix of <C_l|a|C_k> indexed [l, k]
    a_elems: np.ndarray
    # Matrix of <C_l|a^dagger|C_k> indexed [l, k]
    adag_elems: np.ndarray
    # Leakage amplitude of a|C_k> onto the excited sector state
    leak_a: np.ndarray
    # Leakage amplitude of a^dagger|C_k> onto the excited sector state
    leak_adag: np.ndarray


@dataclass(frozen=True, eq=False)
class TransitionComparison:
    """Closed-form and brute-force transition tables side by side"""

    closed_form: TransitionTable
    numerical: TransitionTable

    @property
    def max_deviation(self) -> float:
        return float(max(np.max(np.abs(self.closed_form.a_elems - self.numerical.a_elems)),
                         np.max(np.abs(self.closed_form.adag_elems - self.numerical.adag_elems))))


@dataclass(frozen=True)
class QutritCoords:
    """Gell-Mann coordinates of a qutrit density matrix"""

    x: float
    y: float
    z: float


# Dynamics section begins
class RampKind(Enum):
    """Time profile of the pump switch-on"""

    SMOOTHSTEP_CUBIC = "cubic"
    QUARTIC_EXPONENTIAL = "quartic"
    CONSTANT = "constant"


@dataclass(frozen=True)
class RampSpec:
    """Pump ramp from zero to the target amplitude"""

    # Time profile
    kind: RampKind
    # Final pump amplitude
    target_pump: float
    # Ramp time t_r or time constant tau
    ramp_time: float
    # Ramp the detuning with the same envelope
    also_ramp_detuning: bool = False
    # Final detuning used when the detuning is ramped
    target_detuning: float = 0.0

    def __post_init__(self):
        if self.ramp_time <= 0 and self.kind is not RampKind.CONSTANT:
            raise ParameterError(f"ramp_time must be positive, got {self.ramp_time}")

    def envelope(self, t: float) -> float:
        # Dimensionless switch-on profile in [0, 1]
        if self.kind is RampKind.CONSTANT:
            return 1.0
        if self.kind is RampKind.SMOOTHSTEP_CUBIC:
            s = min(max(t / self.ramp_time, 0.0), 1.0)
            return 3 * s ** 2 - 2 * s ** 3
        return 1.0 - float(np.exp(-(max(t, 0.0) / self.ramp_time) ** 4))

    @property
    def duration(self) -> float:
        # Total evolution time of a preparation run
        if self.kind is RampKind.QUARTIC_EXPONENTIAL:
            return 3.0 * self.ramp_time
        return self.ramp_time


@dataclass(frozen=True, eq=False)
class LindbladSpec:
    """Hamiltonian and weighted jump operators of a master equation"""

    # Static Hamiltonian or callable returning the Hamiltonian matrix at time t
    hamiltonian: Union[OperatorMatrix, Callable[[float], np.ndarray]]
    # Jump operators with their rates
    jumps: Tuple[Tuple[OperatorMatrix, float], ...] = ()
    # Dimension of the underlying space
    dim: int = 0

    def __post_init__(self):
        dim = self.dim or (self.hamiltonian.dim if isinstance(self.hamiltonian, OperatorMatrix) else 0)
        if dim == 0:
            raise ParameterError("time-dependent Hamiltonians require an explicit dim")
        for operator, rate in self.jumps:
            if rate < 0:
                raise ParameterError(f"jump rates must be non-negative, got {rate}")
            _check_dims(dim, operator.dim)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "jumps", tuple(self.jumps))

    @property
    def time_dependent(self) -> bool:
        return not isinstance(self.hamiltonian, OperatorMatrix)

    @property
    def total_rate(self) -> float:
        return float(sum(rate for _, rate in self.jumps))

    def hamiltonian_at(self, t: float) -> np.ndarray:
        if isinstance(self.hamiltonian, OperatorMatrix):
            return np.asarray(self.hamiltonian.entries)
        return np.asarray(self.hamiltonian(t), dtype=complex)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled channels of an evolution"""

    # Sample times, strictly increasing
    times: np.ndarray
    # Named channels sampled at the same times
    channels: Dict[str, np.ndarray] = field(default_factory=dict)
    # Optional full states
    states: Optional[Sequence[DensityMatrix]] = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ParameterError("time samples must be strictly increasing")
        object.__setattr__(self, "times", times)

    def channel(self, name: str) -> np.ndarray:
        return np.asarray(self.channels[name])


@dataclass(frozen=True, eq=False)
class PreparationResult:
    """Outcome of an adiabatic preparation run"""

    rho_final: DensityMatrix
    # Populations on the numerically exact cat states at final parameters
    populations: np.ndarray


@dataclass(frozen=True, eq=False)
class SteadyStateComparison:
    """Steady state from two independent methods"""

    null_space: DensityMatrix
    long_time: DensityMatrix
    trace_distance: float
