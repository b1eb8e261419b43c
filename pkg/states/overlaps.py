"""Closed-form overlaps between displaced squeezed vacuum and one-photon states."""

import cmath
import math

import numpy as np

from states.gaussian_frame import squeezing_parameter
from utilities.typehints import CatOverlap, GaussianParams, ModelParams


def overlap_squeezed_coherent(p: ModelParams) -> CatOverlap:
    """<zeta_k|zeta_{k+1}> = A e^{i Theta} from the equal-amplitude reduction"""
    params = squeezing_parameter(p)[0]
    r, intensity = params.r, params.alpha_mag ** 2
    magnitude = 2 ** 0.75 / (5 + 3 * math.cosh(4 * r)) ** 0.25 * math.exp(
        -3 * intensity / (2 * math.cosh(2 * r) + math.sinh(2 * r)))
    # Principal branch (-1)^{1/3} = e^{i pi / 3}
    cube_root = cmath.exp(1j * math.pi / 3)
    phase = (2 * math.sqrt(3) * intensity / (1 + 3 * math.exp(4 * r))
             - 0.5 * cmath.phase(math.cosh(r) ** 2 + cube_root * math.sinh(r) ** 2))
    return CatOverlap(A=magnitude, Theta=phase)


def general_gaussian_overlap(g1: GaussianParams, g2: GaussianParams) -> complex:
    """<alpha_1, xi_1|alpha_2, xi_2> for arbitrary displacements and squeezings"""
    a1, a2 = g1.alpha, g2.alpha
    t1 = cmath.exp(1j * g1.theta) * math.tanh(g1.r)
    t2 = cmath.exp(1j * g2.theta) * math.tanh(g2.r)
    b1 = a1 + t1 * a1.conjugate()
    b2 = a2 + t2 * a2.conjugate()
    prefactor = (math.cosh(g1.r) * math.cosh(g2.r)
                 - math.sinh(g1.r) * math.sinh(g2.r) * cmath.exp(1j * (g2.theta - g1.theta))) ** -0.5
    exponent = (-abs(a1) ** 2 / 2 - abs(a2) ** 2 / 2
                - t1.conjugate() * a1 ** 2 / 2 - t2 * a2.conjugate() ** 2 / 2
                + (-t2 * b1.conjugate() ** 2 - t1.conjugate() * b2 ** 2 + 2 * b1.conjugate() * b2)
                / (2 * (1 - t1.conjugate() * t2)))
    return complex(prefactor * cmath.exp(exponent))


def _eta(gk: GaussianParams, gl: GaussianParams) -> complex:
    # cosh r (alpha_k - alpha_l) + e^{i theta_k} sinh r (alpha_k^* - alpha_l^*)
    return (math.cosh(gk.r) * (gk.alpha - gl.alpha)
            + cmath.exp(1j * gk.theta) * math.sinh(gk.r) * (gk.alpha - gl.alpha).conjugate())


def number_state_overlaps(gk: GaussianParams, gl: GaussianParams) -> dict[str, complex]:
    """Overlaps of D S|n> states with n <= 1 sharing |alpha| and r.

    Keys: s00 = <k|l>, s10 = <k,1|l>, s01 = <k|l,1>, s11 = <k,1|l,1>.
    """
    c, s = math.cosh(gk.r), math.sinh(gk.r)
    eta_lk = _eta(gl, gk)
    eta_kl_conj = _eta(gk, gl).conjugate()
    sigma = c ** 2 - cmath.exp(1j * (gl.theta - gk.theta)) * s ** 2
    base = (cmath.exp(1j * gk.alpha_mag ** 2 * math.sin(gl.phi - gk.phi))
            * cmath.exp(eta_lk * eta_kl_conj / (2 * sigma)) / cmath.sqrt(sigma))
    return {
        "s00": complex(base),
        "s10": complex(base * eta_lk / sigma),
        "s01": complex(base * eta_kl_conj / sigma),
        "s11": complex(base * (1 / sigma + eta_lk * eta_kl_conj / sigma ** 2)),
    }


def overlap_matrices(triple: tuple[GaussianParams, ...]) -> dict[str, np.ndarray]:
    """All pairwise number-state overlaps of the three legs, indexed [k, l]"""
    matrices = {key: np.zeros((3, 3), dtype=complex) for key in ("s00", "s10", "s01", "s11")}
    for k in range(3):
        for l in range(3):
            for key, value in number_state_overlaps(triple[k], triple[l]).items():
                matrices[key][k, l] = value
    return matrices


def excited_overlap_modulus(p: ModelParams) -> float:
    """|<zeta_0|zeta_1, 1>| = 2 sqrt((2 cosh 2r - sinh 2r) / (5/3 + cosh 4r)) |alpha| A"""
    params = squeezing_parameter(p)[0]
    r = params.r
    factor = 2 * math.sqrt((2 * math.cosh(2 * r) - math.sinh(2 * r)) / (5 / 3 + math.cosh(4 * r)))
    return factor * params.alpha_mag * overlap_squeezed_coherent(p).A
