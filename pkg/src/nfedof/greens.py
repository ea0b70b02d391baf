"""Free-space Green's functions: the scalar spherical-wave kernel and the
3x3 polarized (dyadic) kernel.

The dyadic entries come from the closed coefficient form
G^{pq} = eta(p,q) * G with
eta(p,q) = delta_pq * (1 + j/(k0 d) - 1/(k0 d)^2)
         + a_p a_q * (3/(k0 d)^2 - 3j/(k0 d) - 1),
where a = (r - s)/|r - s|.  This is what the operator form
(I + grad grad^H / k0^2) G expands to; a finite-difference check of the
operator lives in the test suite, not here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularityError
from .geometry import WaveParams

FOUR_PI = 4.0 * np.pi

# evaluations closer than wavelength/SINGULARITY_GUARD raise
SINGULARITY_GUARD = 100.0

AXES = ("x", "y", "z")


def min_distance_guard(dmin: float, wave: WaveParams) -> None:
    limit = wave.wavelength / SINGULARITY_GUARD
    if dmin < limit:
        raise SingularityError(
            f"point pair at distance {dmin:.3e} m is closer than the "
            f"singularity guard {limit:.3e} m (wavelength/100)")


def scalar_green(r, s, wave: WaveParams) -> complex:
    """Scalar kernel exp(-j*k0*|r-s|) / (4*pi*|r-s|)."""
    diff = np.asarray(r, dtype=float) - np.asarray(s, dtype=float)
    d = float(np.sqrt(np.dot(diff, diff)))
    min_distance_guard(d, wave)
    return complex(np.exp(-1j * wave.wavenumber * d) / (FOUR_PI * d))


def eta_matrix(direction: np.ndarray, kd: float) -> np.ndarray:
    """Polarization coefficient matrix for unit direction a and k0*d."""
    c1 = 1.0 + 1j / kd - 1.0 / (kd * kd)
    c2 = 3.0 / (kd * kd) - 3j / kd - 1.0
    a = np.asarray(direction, dtype=float)
    return c1 * np.eye(3, dtype=np.complex128) + c2 * np.outer(a, a)


@dataclass(frozen=True)
class DyadicSample:
    """3x3 polarized kernel at one receive/source point pair."""

    matrix: np.ndarray
    receive: np.ndarray
    source: np.ndarray
    distance: float
    direction: np.ndarray

    def entry(self, p: str, q: str) -> complex:
        return complex(self.matrix[AXES.index(p), AXES.index(q)])


def dyadic_green(r, s, wave: WaveParams) -> DyadicSample:
    """Polarized kernel samples G^{pq}(r, s) for p, q in {x, y, z}."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    diff = r - s
    d = float(np.sqrt(np.dot(diff, diff)))
    min_distance_guard(d, wave)
    a = diff / d
    g = np.exp(-1j * wave.wavenumber * d) / (FOUR_PI * d)
    return DyadicSample(eta_matrix(a, wave.wavenumber * d) * g, r, s, d, a)
