import math

import numpy as np


# Render a controller run time, recorded as integer milliseconds in the manifest
def format_elapsed_time(elapsed_ms: int) -> str:
    """Short run time: '850 ms' below a second, '12.4 s' below a minute, '3 min 05 s' above"""
    if elapsed_ms < 0:
        raise ValueError(f"elapsed time must be non-negative, got {elapsed_ms}")
    if elapsed_ms < 1000:
        return f"{elapsed_ms} ms"
    minutes, seconds = divmod(elapsed_ms / 1000, 60)
    if minutes < 1:
        return f"{seconds:.1f} s"
    return f"{int(minutes)} min {int(seconds):02d} s"


def wrap_phase(angle: float) -> float:
    """Reduce an angle to the interval (-pi, pi]"""
    wrapped = math.remainder(angle, 2 * math.pi)
    if wrapped <= -math.pi + 1e-12:
        wrapped += 2 * math.pi
    return wrapped


def sector_of(n: int | np.ndarray) -> int | np.ndarray:
    """Symmetry sector of a Fock level"""
    return np.mod(n, 3)


def hermitize(matrix: np.ndarray) -> np.ndarray:
    """Hermitian part of a square matrix"""
    return 0.5 * (matrix + matrix.conj().T)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of the difference of two density matrices"""
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(hermitize(rho - sigma)))))
