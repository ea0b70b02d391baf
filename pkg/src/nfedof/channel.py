"""Channel-matrix assembly for every transceiver layout.

Discrete layouts (dipole UPA/ULA) produce dense matrices whose entries are
scalar or polarized Green's-function samples.  Patch layouts and continuous
apertures are handled through weighted sample sets: a quadrature rule on the
regions turns region integrals into weighted matrix algebra, so the same
Gram-based estimators work for every design.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ._backend import get_kernels
from .errors import ArgumentError, DegenerateInputError, ResourceLimitError
from .geometry import (CapLine, CapPlane, PatchUpaGeometry, UlaGeometry,
                       UpaGeometry, WaveParams)
from .greens import AXES, min_distance_guard
from .numerics import QuadratureRule, gauss_legendre

Geometry = Union[UpaGeometry, UlaGeometry, CapPlane, CapLine, PatchUpaGeometry]

# refuse Gram formation beyond this side length (memory guard)
MAX_GRAM_SIDE = 20_000

_FAMILY = {
    UpaGeometry: "upa",
    UlaGeometry: "ula",
    CapPlane: "cap-plane",
    CapLine: "cap-line",
    PatchUpaGeometry: "patch-upa",
}


@dataclass(frozen=True)
class PolarizationSet:
    """Ordered polarization axes; only the prefixes (x), (x,y), (x,y,z)."""

    axes: tuple[str, ...]

    def __post_init__(self):
        allowed = {1: ("x",), 2: ("x", "y"), 3: ("x", "y", "z")}
        if self.axes not in allowed.values():
            raise ArgumentError(
                f"polarization set must be one of {list(allowed.values())}, got {self.axes}")

    @property
    def count(self) -> int:
        return len(self.axes)

    @property
    def indices(self) -> np.ndarray:
        return np.array([AXES.index(a) for a in self.axes], dtype=np.int64)

    @classmethod
    def from_count(cls, n: int) -> "PolarizationSet":
        if n not in (1, 2, 3):
            raise ArgumentError(f"polarization count must be 1, 2 or 3, got {n}")
        return cls(("x", "y", "z")[:n])


SINGLE = PolarizationSet.from_count(1)
DOUBLE = PolarizationSet.from_count(2)
TRIPLE = PolarizationSet.from_count(3)


@dataclass(frozen=True)
class LinkConfig:
    """A transmitter at z=0 facing a receiver of the same family at z=D."""

    tx: Geometry
    rx: Geometry
    distance: float
    wave: WaveParams

    def __post_init__(self):
        if not self.distance > 0:
            raise ArgumentError(f"link distance must be positive, got {self.distance}")
        ft, fr = _FAMILY.get(type(self.tx)), _FAMILY.get(type(self.rx))
        if ft is None or fr is None:
            raise ArgumentError(f"unsupported geometry types ({type(self.tx)}, {type(self.rx)})")
        if ft != fr:
            raise ArgumentError(f"transmit/receive geometries differ: {ft} vs {fr}")

    @property
    def family(self) -> str:
        return _FAMILY[type(self.tx)]

    def tx_positions(self) -> np.ndarray:
        return self.tx.at_z(0.0).positions()

    def rx_positions(self) -> np.ndarray:
        return self.rx.at_z(self.distance).positions()


@dataclass(frozen=True)
class ChannelMatrix:
    """Dense channel with (polarization, antenna) block labeling.

    ``values`` has shape (N_p*N, N_p*M); for a scalar channel pols is empty
    and the shape is plain (N, M).
    """

    values: np.ndarray
    n_rx: int
    n_tx: int
    pols: tuple[str, ...] = ()

    @property
    def n_pol(self) -> int:
        return max(1, len(self.pols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def block(self, p: int, q: int) -> np.ndarray:
        """(N, M) sub-block for receive polarization p, transmit q."""
        if not (0 <= p < self.n_pol and 0 <= q < self.n_pol):
            raise ArgumentError(f"block index ({p}, {q}) out of range for {self.n_pol} polarizations")
        return self.values[p * self.n_rx:(p + 1) * self.n_rx,
                           q * self.n_tx:(q + 1) * self.n_tx]

    def sub_polarization(self, pols: PolarizationSet) -> "ChannelMatrix":
        """Extract the leading pols.count x pols.count blocks."""
        if pols.count > self.n_pol:
            raise ArgumentError("requested more polarizations than the matrix carries")
        k = pols.count
        rows = [np.hstack([self.block(p, q) for q in range(k)]) for p in range(k)]
        return ChannelMatrix(np.vstack(rows), self.n_rx, self.n_tx, pols.axes)


def assemble_scalar(link: LinkConfig) -> ChannelMatrix:
    """N x M matrix of scalar Green's samples for a discrete link."""
    if link.family not in ("upa", "ula"):
        raise ArgumentError(f"assemble_scalar needs a discrete layout, got {link.family}")
    rx = link.rx_positions()
    tx = link.tx_positions()
    h, dmin = get_kernels().scalar_green_matrix(rx, tx, link.wave.wavenumber)
    min_distance_guard(dmin, link.wave)
    return ChannelMatrix(h, rx.shape[0], tx.shape[0], ())


def assemble_dyadic(link: LinkConfig, pols: PolarizationSet) -> ChannelMatrix:
    """(N_p*N) x (N_p*M) polarized channel; blocks ordered like ``pols``."""
    if link.family not in ("upa", "ula"):
        raise ArgumentError(f"assemble_dyadic needs a discrete layout, got {link.family}")
    rx = link.rx_positions()
    tx = link.tx_positions()
    h, dmin = get_kernels().dyadic_green_matrix(rx, tx, link.wave.wavenumber, pols.indices)
    min_distance_guard(dmin, link.wave)
    return ChannelMatrix(h, rx.shape[0], tx.shape[0], pols.axes)


def gram(h: np.ndarray | ChannelMatrix) -> tuple[np.ndarray, str]:
    """H^H H or H H^H, whichever is smaller; both share nonzero eigenvalues.

    Returns (matrix, side) with side "tx" for H^H H and "rx" for H H^H.
    """
    values = h.values if isinstance(h, ChannelMatrix) else np.asarray(h)
    if values.ndim != 2:
        raise ArgumentError(f"expected a 2-D matrix, got shape {values.shape}")
    n, m = values.shape
    side = min(n, m)
    if side > MAX_GRAM_SIDE:
        raise ResourceLimitError(
            f"Gram side {side} exceeds the {MAX_GRAM_SIDE} guard "
            f"(would need ~{16 * side * side / 1e9:.1f} GB)")
    if m <= n:
        return values.conj().T @ values, "tx"
    return values @ values.conj().T, "rx"


# ---------------------------------------------------------------------------
# Region sampling: turns integrals over patches / continuous apertures into
# weighted point sets, all in the z = const plane of the owning geometry.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionSamples:
    """Quadrature points covering one or more planar regions.

    ``element`` maps each point to its owning region (points of one element
    are contiguous); weights carry the full area/length measure.
    """

    points: np.ndarray
    weights: np.ndarray
    element: np.ndarray
    n_elements: int

    @property
    def count(self) -> int:
        return self.points.shape[0]

    def element_slices(self) -> list[slice]:
        bounds = np.searchsorted(self.element, np.arange(self.n_elements + 1))
        return [slice(bounds[k], bounds[k + 1]) for k in range(self.n_elements)]


def cap_plane_samples(plane: CapPlane, rule_h: QuadratureRule,
                      rule_v: QuadratureRule) -> RegionSamples:
    """Tensor Gauss-Legendre samples over a continuous rectangle."""
    x, wx = rule_h.scaled(-0.5 * plane.l_h, 0.5 * plane.l_h)
    y, wy = rule_v.scaled(-0.5 * plane.l_v, 0.5 * plane.l_v)
    xx = np.repeat(x, y.size)
    yy = np.tile(y, x.size)
    ww = np.repeat(wx, y.size) * np.tile(wy, x.size)
    pts = np.column_stack([xx, yy, np.full(xx.size, plane.z)])
    return RegionSamples(pts, ww, np.zeros(xx.size, dtype=np.int64), 1)


def cap_line_samples(line: CapLine, rule: QuadratureRule) -> RegionSamples:
    y, w = rule.scaled(-0.5 * line.l, 0.5 * line.l)
    pts = np.column_stack([np.zeros(y.size), y, np.full(y.size, line.z)])
    return RegionSamples(pts, w, np.zeros(y.size, dtype=np.int64), 1)


def patch_samples(g: PatchUpaGeometry, rule: QuadratureRule) -> RegionSamples:
    """Per-element tensor samples over every patch region."""
    centers, half_h, half_v = g.patch_regions()
    xn, wx = rule.scaled(-half_h, half_h)
    yn, wy = rule.scaled(-half_v, half_v)
    ex = np.repeat(xn, yn.size)
    ey = np.tile(yn, xn.size)
    ew = np.repeat(wx, yn.size) * np.tile(wy, xn.size)
    per = ex.size
    m = g.count
    pts = np.empty((m * per, 3))
    pts[:, 0] = (centers[:, 0:1] + ex[None, :]).ravel()
    pts[:, 1] = (centers[:, 1:2] + ey[None, :]).ravel()
    pts[:, 2] = g.z
    weights = np.tile(ew, m)
    element = np.repeat(np.arange(m, dtype=np.int64), per)
    return RegionSamples(pts, weights, element, m)


def _grid_axis(length: float, density: float, wavelength: float) -> int:
    n = int(np.ceil(density * length / wavelength))
    return max(n, 1)


def cap_plane_grid_samples(plane: CapPlane, density: float, wave: WaveParams) -> RegionSamples:
    """Uniform lattice at the given samples-per-wavelength density.

    The lattice follows the discrete-array convention (corner start, spacing
    L/n), so a density-d grid coincides with a d-per-wavelength dipole UPA.
    """
    if density < 2.0:
        raise ArgumentError(f"grid density must be >= 2 samples/wavelength, got {density}")
    nh = _grid_axis(plane.l_h, density, wave.wavelength)
    nv = _grid_axis(plane.l_v, density, wave.wavelength)
    if nh * nv > MAX_GRAM_SIDE:
        raise ResourceLimitError(
            f"dense grid of {nh}x{nv} points exceeds the {MAX_GRAM_SIDE} matrix guard")
    upa = UpaGeometry(nh, nv, plane.l_h, plane.l_v, plane.z)
    cell = (plane.l_h / nh) * (plane.l_v / nv)
    pts = upa.positions()
    return RegionSamples(pts, np.full(pts.shape[0], cell),
                         np.zeros(pts.shape[0], dtype=np.int64), 1)


def cap_line_grid_samples(line: CapLine, density: float, wave: WaveParams) -> RegionSamples:
    if density < 2.0:
        raise ArgumentError(f"grid density must be >= 2 samples/wavelength, got {density}")
    n = _grid_axis(line.l, density, wave.wavelength)
    if n > MAX_GRAM_SIDE:
        raise ResourceLimitError(f"dense grid of {n} points exceeds the {MAX_GRAM_SIDE} guard")
    ula = UlaGeometry(n, line.l, line.z)
    pts = ula.positions()
    return RegionSamples(pts, np.full(n, line.l / n), np.zeros(n, dtype=np.int64), 1)


# ---------------------------------------------------------------------------
# Weighted channels: sqrt-weighted Green's samples between two sample sets.
# With A[k,i] = sqrt(w_k) G(r_k, t_i) sqrt(w_i), region integrals become
# plain matrix algebra: ||A||_F^2 is the integrated channel gain and
# (A^H A)[i,j] recovers the receive-side correlation kernel K(t_i, t_j)
# times sqrt(w_i w_j).
# ---------------------------------------------------------------------------


def weighted_scalar_channel(rx: RegionSamples, tx: RegionSamples,
                            wave: WaveParams) -> np.ndarray:
    h, dmin = get_kernels().scalar_green_matrix(rx.points, tx.points, wave.wavenumber)
    min_distance_guard(dmin, wave)
    return np.sqrt(rx.weights)[:, None] * h * np.sqrt(tx.weights)[None, :]


def weighted_dyadic_channel(rx: RegionSamples, tx: RegionSamples, wave: WaveParams,
                            pols: PolarizationSet) -> np.ndarray:
    h, dmin = get_kernels().dyadic_green_matrix(rx.points, tx.points,
                                                wave.wavenumber, pols.indices)
    min_distance_guard(dmin, wave)
    wr = np.tile(np.sqrt(rx.weights), pols.count)
    wt = np.tile(np.sqrt(tx.weights), pols.count)
    return wr[:, None] * h * wt[None, :]


@dataclass(frozen=True)
class PatchScalarTable:
    """Element-pair integral evaluators for a patch-antenna link.

    ``weighted`` is the sqrt-weighted sample channel; ``gain_table()`` gives
    the per-pair integrated squared gain over V_{R,n} x V_{T,m}, and
    ``kernel_gram()`` the weighted receive-side correlation kernel summed
    over all receive elements.
    """

    weighted: np.ndarray
    rx: RegionSamples
    tx: RegionSamples
    wave: WaveParams

    def gain_table(self) -> np.ndarray:
        power = self.weighted.real ** 2 + self.weighted.imag ** 2
        rx_bounds = [s.start for s in self.rx.element_slices()]
        tx_bounds = [s.start for s in self.tx.element_slices()]
        return np.add.reduceat(np.add.reduceat(power, rx_bounds, axis=0), tx_bounds, axis=1)

    def total_gain(self) -> float:
        return float(np.sum(self.weighted.real ** 2 + self.weighted.imag ** 2))

    def kernel_gram(self) -> np.ndarray:
        return self.weighted.conj().T @ self.weighted


def assemble_patch_scalar(link: LinkConfig, per_element_rule: QuadratureRule) -> PatchScalarTable:
    """Sampled patch-element integrals for the scalar kernel."""
    if link.family != "patch-upa":
        raise ArgumentError(f"assemble_patch_scalar needs a patch layout, got {link.family}")
    if per_element_rule.order < 1:
        raise ArgumentError("per-element quadrature order must be >= 1")
    tx = patch_samples(link.tx.at_z(0.0), per_element_rule)
    rx = patch_samples(link.rx.at_z(link.distance), per_element_rule)
    return PatchScalarTable(weighted_scalar_channel(rx, tx, link.wave), rx, tx, link.wave)


# ---------------------------------------------------------------------------
# Binary channel dump for cross-implementation comparison.
# Header: magic "NFCM", u32 version, u32 rows, u32 cols (little endian),
# then row-major float64 little-endian interleaved re/im entries.
# ---------------------------------------------------------------------------

_MAGIC = b"NFCM"
_DUMP_VERSION = 1


def dump_channel(h: np.ndarray | ChannelMatrix, path) -> None:
    values = h.values if isinstance(h, ChannelMatrix) else np.asarray(h, dtype=np.complex128)
    if values.ndim != 2:
        raise ArgumentError("can only dump 2-D matrices")
    rows, cols = values.shape
    header = np.array([_DUMP_VERSION, rows, cols], dtype="<u4")
    inter = np.empty((rows, cols, 2), dtype="<f8")
    inter[:, :, 0] = values.real
    inter[:, :, 1] = values.imag
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(header.tobytes())
        fh.write(inter.tobytes())


def load_channel(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ArgumentError(f"not a channel dump (bad magic {magic!r})")
        version, rows, cols = np.frombuffer(fh.read(12), dtype="<u4")
        if version != _DUMP_VERSION:
            raise ArgumentError(f"unsupported channel dump version {version}")
        data = np.frombuffer(fh.read(int(rows) * int(cols) * 16), dtype="<f8")
    if data.size != rows * cols * 2:
        raise DegenerateInputError("channel dump truncated")
    data = data.reshape(int(rows), int(cols), 2)
    return (data[:, :, 0] + 1j * data[:, :, 1]).astype(np.complex128)
