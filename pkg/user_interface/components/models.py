# Import dataclass helpers for the run records
from dataclasses import dataclass, field, asdict
# Import typing hints for complex data structures
from typing import Any, Dict, List, Optional, Tuple

# Import numpy for axis values
import numpy as np

# Import the configuration error raised on malformed input
from utilities.exceptions import ConfigurationError
# Import the physical parameter record
from utilities.typehints import DEFAULT_TOLERANCES, ModelParams, Tolerances

# Commands understood by the command-line front end
COMMANDS = ("phase-diagram", "spectrum", "states", "evolve", "steady")
# Output formats for data tables
FORMATS = ("csv", "json")
# Variables that a sweep may scan
SWEEP_VARIABLES = ("pump", "delta", "kappa", "ramp-time")


# Define data class for a one-dimensional parameter sweep
@dataclass(frozen=True)
class SweepSpec:
    """Axis specification VAR:FROM:TO:N"""

    # Name of the scanned parameter
    variable: str
    # First value of the axis
    start: float
    # Last value of the axis
    stop: float
    # Number of points, endpoints included
    points: int

    # Parse the textual form used on the command line
    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigurationError(f"malformed sweep '{text}': expected VAR:FROM:TO:N")
        variable, start, stop, points = parts
        if variable not in SWEEP_VARIABLES:
            raise ConfigurationError(f"unknown sweep variable '{variable}', choose from {', '.join(SWEEP_VARIABLES)}")
        try:
            spec = cls(variable, float(start), float(stop), int(points))
        except ValueError as error:
            raise ConfigurationError(f"malformed sweep '{text}': {error}") from error
        if spec.points < 1:
            raise ConfigurationError(f"sweep needs at least one point, got {spec.points}")
        return spec

    # Values of the axis in ascending index order
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


# Define data class for a square phase-space grid
@dataclass(frozen=True)
class GridSpec:
    """Wigner grid specification RE:IM:N, extents of the real and imaginary axes"""

    # Half-width of the real axis
    re_extent: float
    # Half-width of the imaginary axis
    im_extent: float
    # Points per axis
    points: int

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"malformed grid '{text}': expected RE:IM:N")
        try:
            spec = cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as error:
            raise ConfigurationError(f"malformed grid '{text}': {error}") from error
        if spec.re_extent <= 0 or spec.im_extent <= 0 or spec.points < 3:
            raise ConfigurationError(f"grid needs positive extents and at least 3 points, got '{text}'")
        return spec


# Define data class holding a fully resolved run
@dataclass(frozen=True)
class RunConfig:
    """Resolved configuration of a single command-line run"""

    # Command to execute
    command: str
    # Physical parameters in units of U
    params: ModelParams
    # Fock-space dimension, None selects the default truncation
    dim: Optional[int] = None
    # Parameter sweeps, at most one per variable
    sweeps: Tuple[SweepSpec, ...] = ()
    # Optional Wigner grid
    grid: Optional[GridSpec] = None
    # Output directory
    output: str = "results"
    # Output format for data tables
    fmt: str = "csv"
    # Worker threads for sweeps
    threads: int = 1
    # Command-specific options
    options: Dict[str, Any] = field(default_factory=dict)
    # Numerical tolerances echoed into the manifest
    tolerances: Tolerances = DEFAULT_TOLERANCES

    # Validate cross-field constraints
    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command '{self.command}'")
        if self.fmt not in FORMATS:
            raise ConfigurationError(f"unknown format '{self.fmt}', choose csv or json")
        if self.threads < 1:
            raise ConfigurationError(f"threads must be at least 1, got {self.threads}")
        if self.dim is not None and self.dim < 4:
            raise ConfigurationError(f"dim must be at least 4, got {self.dim}")
        variables = [sweep.variable for sweep in self.sweeps]
        if len(set(variables)) != len(variables):
            raise ConfigurationError(f"each variable may be swept once, got {', '.join(variables)}")

    # Sweep over the given variable, if one was requested
    def sweep_for(self, variable: str) -> Optional[SweepSpec]:
        return next((sweep for sweep in self.sweeps if sweep.variable == variable), None)

    # Plain mapping for the run manifest
    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": self.params.as_dict(),
            "dim": self.dim,
            "sweeps": [asdict(sweep) for sweep in self.sweeps],
            "grid": asdict(self.grid) if self.grid else None,
            "output": self.output,
            "format": self.fmt,
            "threads": self.threads,
            "options": dict(self.options),
            "tolerances": self.tolerances.as_dict(),
        }


# Define data class for the outcome of a command
@dataclass
class CommandResult:
    """Named data tables plus a short summary for the console"""

    # Name of the command that produced the result
    command: str
    # Table name mapped to its rows, each row a flat mapping
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    # Scalar diagnostics shown on the console and stored in the manifest
    summary: Dict[str, Any] = field(default_factory=dict)
    # Name of the numerical back-end used
    solver_name: Optional[str] = None
    # Time taken in milliseconds
    time: int = 0
