"""Transceiver layouts: planar/linear dipole arrays, continuous apertures,
and planar arrays of finite-size patch elements.

Conventions: arrays live in planes parallel to the x-y plane, centered on the
z axis.  A planar array counts antennas row by row from the bottom-left
corner; antenna m (1-based) sits at
(-L_H/2 + i(m)*dH, -L_V/2 + j(m)*dV, z) with i(m) = (m-1) mod M_H and
j(m) = floor((m-1)/M_H).  Note the layout is not symmetric about the center
(the last element per axis sits at L/2 - spacing); pass ``centered=True`` to
shift every element by half a spacing if a symmetric array is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ArgumentError

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class WaveParams:
    """Carrier frequency with derived wavelength and wavenumber."""

    frequency: float

    def __post_init__(self):
        if not self.frequency > 0:
            raise ArgumentError(f"frequency must be positive, got {self.frequency}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency

    @property
    def wavenumber(self) -> float:
        return 2.0 * np.pi / self.wavelength

    @classmethod
    def from_wavelength(cls, wavelength: float) -> "WaveParams":
        if not wavelength > 0:
            raise ArgumentError(f"wavelength must be positive, got {wavelength}")
        return cls(SPEED_OF_LIGHT / wavelength)


def _require_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise ArgumentError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class UpaGeometry:
    """Uniform planar array of M_H x M_V point dipoles."""

    m_h: int
    m_v: int
    l_h: float
    l_v: float
    z: float = 0.0
    centered: bool = False

    def __post_init__(self):
        if self.m_h < 1 or self.m_v < 1:
            raise ArgumentError("antenna counts must be >= 1")
        _require_positive(l_h=self.l_h, l_v=self.l_v)

    @property
    def count(self) -> int:
        return self.m_h * self.m_v

    @property
    def spacing_h(self) -> float:
        return self.l_h / self.m_h

    @property
    def spacing_v(self) -> float:
        return self.l_v / self.m_v

    @property
    def aperture(self) -> float:
        """Diagonal of the bounding rectangle."""
        return float(np.hypot(self.l_h, self.l_v))

    def positions(self) -> np.ndarray:
        """(M, 3) coordinates in row-by-row antenna order."""
        m = np.arange(self.count)
        i = np.mod(m, self.m_h)
        j = m // self.m_h
        shift_h = 0.5 * self.spacing_h if self.centered else 0.0
        shift_v = 0.5 * self.spacing_v if self.centered else 0.0
        pts = np.empty((self.count, 3))
        pts[:, 0] = -0.5 * self.l_h + i * self.spacing_h + shift_h
        pts[:, 1] = -0.5 * self.l_v + j * self.spacing_v + shift_v
        pts[:, 2] = self.z
        return pts

    def at_z(self, z: float) -> "UpaGeometry":
        return replace(self, z=z)

    @classmethod
    def square(cls, m_per_side: int, side: float, z: float = 0.0,
               centered: bool = False) -> "UpaGeometry":
        return cls(m_per_side, m_per_side, side, side, z, centered)


@dataclass(frozen=True)
class UlaGeometry:
    """Uniform linear array of M point dipoles on the y axis."""

    m: int
    l: float
    z: float = 0.0
    centered: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise ArgumentError("antenna count must be >= 1")
        _require_positive(l=self.l)

    @property
    def count(self) -> int:
        return self.m

    @property
    def spacing(self) -> float:
        return self.l / self.m

    @property
    def aperture(self) -> float:
        return self.l

    def positions(self) -> np.ndarray:
        m = np.arange(self.m)
        shift = 0.5 * self.spacing if self.centered else 0.0
        pts = np.zeros((self.m, 3))
        pts[:, 1] = -0.5 * self.l + m * self.spacing + shift
        pts[:, 2] = self.z
        return pts

    def at_z(self, z: float) -> "UlaGeometry":
        return replace(self, z=z)


@dataclass(frozen=True)
class CapPlane:
    """Continuous rectangular aperture in a z = const plane."""

    l_h: float
    l_v: float
    z: float = 0.0

    def __post_init__(self):
        _require_positive(l_h=self.l_h, l_v=self.l_v)

    @property
    def area(self) -> float:
        return self.l_h * self.l_v

    @property
    def aperture(self) -> float:
        return float(np.hypot(self.l_h, self.l_v))

    def at_z(self, z: float) -> "CapPlane":
        return replace(self, z=z)

    @classmethod
    def square(cls, side: float, z: float = 0.0) -> "CapPlane":
        return cls(side, side, z)


@dataclass(frozen=True)
class CapLine:
    """Continuous line segment on the y axis at z = const."""

    l: float
    z: float = 0.0

    def __post_init__(self):
        _require_positive(l=self.l)

    @property
    def aperture(self) -> float:
        return self.l

    def at_z(self, z: float) -> "CapLine":
        return replace(self, z=z)


@dataclass(frozen=True)
class PatchUpaGeometry:
    """Planar array whose elements are A_H x A_V rectangular patches.

    Patch centers coincide with the dipole positions of ``upa``; element
    sides must not exceed the spacing (patches may touch but not overlap).
    """

    upa: UpaGeometry
    a_h: float
    a_v: float

    def __post_init__(self):
        _require_positive(a_h=self.a_h, a_v=self.a_v)
        tol = 1.0 + 1e-12
        if self.a_h > self.upa.spacing_h * tol or self.a_v > self.upa.spacing_v * tol:
            raise ArgumentError(
                f"patch sides ({self.a_h}, {self.a_v}) exceed element spacing "
                f"({self.upa.spacing_h}, {self.upa.spacing_v})")

    @property
    def count(self) -> int:
        return self.upa.count

    @property
    def z(self) -> float:
        return self.upa.z

    @property
    def element_area(self) -> float:
        return self.a_h * self.a_v

    def positions(self) -> np.ndarray:
        return self.upa.positions()

    def patch_regions(self) -> tuple[np.ndarray, float, float]:
        """Element regions as (centers (M,3), half-width, half-height)."""
        return self.positions(), 0.5 * self.a_h, 0.5 * self.a_v

    def at_z(self, z: float) -> "PatchUpaGeometry":
        return replace(self, upa=self.upa.at_z(z))

    @classmethod
    def square(cls, m_per_side: int, side: float, element_side: float,
               z: float = 0.0) -> "PatchUpaGeometry":
        return cls(UpaGeometry.square(m_per_side, side, z), element_side, element_side)


def upa_positions(g: UpaGeometry) -> np.ndarray:
    return g.positions()


def ula_positions(g: UlaGeometry) -> np.ndarray:
    return g.positions()


def patch_regions(g: PatchUpaGeometry) -> tuple[np.ndarray, float, float]:
    return g.patch_regions()


def rayleigh_distance(aperture_tx: float, aperture_rx: float, wave: WaveParams) -> float:
    """Conventional near/far-field boundary 2*(a_t + a_r)^2 / wavelength."""
    if aperture_tx < 0 or aperture_rx < 0:
        raise ArgumentError("apertures must be non-negative")
    s = aperture_tx + aperture_rx
    return 2.0 * s * s / wave.wavelength
