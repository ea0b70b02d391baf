"""Closed-form EDoF expressions for the scalar-kernel channel.

Discrete planar/linear arrays get an exact-arithmetic ratio built from a
paraxial phase matrix (cost O(M^2 N) through one Gram product).  Continuous
rectangles and line segments get analytic expressions assembled from the
antiderivatives T and Q of the per-axis gain density gamma1, the triangular
separation densities f and g, and a sampled phase coefficient phi in (0, 1].

All sampled quantities are driven by counter-based seeded streams, so equal
seeds give identical results regardless of execution order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .channel import LinkConfig
from .errors import ArgumentError, NumericalError
from .geometry import CapLine, CapPlane, WaveParams
from .numerics import SeededSampler

MU0 = (1.0 / (4.0 * np.pi)) ** 2

# transmit-to-receive size ratio below which the large-transmitter
# approximation is reported as unreliable
LARGE_TX_RATIO = 5.0


@dataclass(frozen=True)
class Cap2dClosedParams:
    """Inputs of the closed-form EDoF for a pair of continuous rectangles."""

    lt_h: float
    lt_v: float
    lr_h: float
    lr_v: float
    distance: float
    k0: float
    m_s: int = 64
    n_s: int = 64
    seed: int = 0
    replicates: int = 8
    sampling: str = "random"  # "random" (seeded) or "grid"

    def __post_init__(self):
        for name in ("lt_h", "lt_v", "lr_h", "lr_v", "distance", "k0"):
            if not getattr(self, name) > 0:
                raise ArgumentError(f"{name} must be positive")
        if self.m_s < 1 or self.n_s < 1:
            raise ArgumentError("sampling counts must be >= 1")
        if self.replicates < 1:
            raise ArgumentError("replicates must be >= 1")
        if self.sampling not in ("random", "grid"):
            raise ArgumentError(f"sampling must be 'random' or 'grid', got {self.sampling}")

    @property
    def mu1(self) -> float:
        return (self.lt_v - self.lr_v) ** 2 + 4.0 * self.distance ** 2

    @property
    def mu2(self) -> float:
        return (self.lt_v + self.lr_v) ** 2 + 4.0 * self.distance ** 2

    @property
    def mu3(self) -> float:
        return (MU0 * self.lr_v * self.lr_h) ** 2

    @classmethod
    def from_planes(cls, tx: CapPlane, rx: CapPlane, distance: float,
                    wave: WaveParams, **kwargs) -> "Cap2dClosedParams":
        return cls(tx.l_h, tx.l_v, rx.l_h, rx.l_v, distance, wave.wavenumber, **kwargs)


# ---------------------------------------------------------------------------
# Per-axis helpers.  gamma1 is the vertical-axis gain density at horizontal
# separation x; T and Q are its antiderivatives (of gamma1 and x*gamma1),
# which is what the property tests differentiate numerically.
# ---------------------------------------------------------------------------


def gamma1(x: float, p: Cap2dClosedParams) -> float:
    x2 = x * x
    return (2.0 * p.lt_v * p.lr_v / (p.distance ** 2 + x2)
            + np.log((p.mu1 + 4.0 * x2) / (p.mu2 + 4.0 * x2)))


def t_function(x: float, p: Cap2dClosedParams) -> float:
    d = p.distance
    x2 = x * x
    s1 = np.sqrt(p.mu1)
    s2 = np.sqrt(p.mu2)
    return (2.0 * p.lt_v * p.lr_v / d * np.arctan(x / d)
            + x * np.log((p.mu1 + 4.0 * x2) / (p.mu2 + 4.0 * x2))
            + s1 * np.arctan(2.0 * x / s1)
            - s2 * np.arctan(2.0 * x / s2))


def q_function(x: float, p: Cap2dClosedParams) -> float:
    d = p.distance
    x2 = x * x
    return (p.lt_v * p.lr_v * np.log(d * d + x2)
            + (4.0 * x2 + p.mu1) / 8.0 * np.log(p.mu1 + 4.0 * x2)
            - (4.0 * x2 + p.mu2) / 8.0 * np.log(p.mu2 + 4.0 * x2))


def pdf_f(x: float, p: Cap2dClosedParams) -> float:
    """Density of the horizontal separation |x_t - x_r|; 0 outside support."""
    return _separation_pdf(x, p.lt_h, p.lr_h)


def pdf_g(y: float, p: Cap2dClosedParams) -> float:
    """Density of the vertical separation |y_t - y_r|; 0 outside support."""
    return _separation_pdf(y, p.lt_v, p.lr_v)


def _separation_pdf(x: float, lt: float, lr: float) -> float:
    if x < 0.0:
        return 0.0
    knee = 0.5 * abs(lt - lr)
    top = 0.5 * (lt + lr)
    if x <= knee:
        return 2.0 / max(lt, lr)
    if x <= top:
        return (lt + lr - 2.0 * x) / (lt * lr)
    return 0.0


def channel_gain_gamma(p: Cap2dClosedParams) -> float:
    """Integrated squared channel gain over the transmit/receive rectangles."""
    a = 0.5 * abs(p.lt_h - p.lr_h)
    b = 0.5 * (p.lt_h + p.lr_h)
    lh_max = max(p.lt_h, p.lr_h)
    gain = MU0 * (2.0 * p.lt_h * p.lr_h / lh_max * t_function(a, p)
                  + (p.lt_h + p.lr_h) * (t_function(b, p) - t_function(a, p))
                  - 2.0 * (q_function(b, p) - q_function(a, p)))
    if not gain > 0.0:
        raise NumericalError(f"channel gain came out non-positive ({gain})")
    return gain


# ---------------------------------------------------------------------------
# Phase coefficient phi: double sample average of a coherent receive sum.
# Random sampling follows the defining construction; a deterministic grid
# variant is available for sensitivity studies.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiEstimate:
    """Sampled phase coefficient with replicate-seed spread diagnostics."""

    value: float
    spread: float
    replicates: tuple[float, ...]
    count_tx: int
    count_rx: int

    @property
    def standard_error(self) -> float:
        n = len(self.replicates)
        return self.spread / np.sqrt(n) if n > 1 else 0.0


def _phi_from_points(rt: np.ndarray, rt2: np.ndarray, rr: np.ndarray, k0: float) -> float:
    d1 = np.sqrt(np.sum((rr[:, None, :] - rt[None, :, :]) ** 2, axis=2))
    d2 = np.sqrt(np.sum((rr[:, None, :] - rt2[None, :, :]) ** 2, axis=2))
    total = get_kernels().phase_factor_sum(d1, d2, k0)
    return total / (rr.shape[0] ** 2 * rt.shape[0] * rt2.shape[0])


def _plane_points(gen, l_h: float, l_v: float, z: float, count: int) -> np.ndarray:
    pts = np.empty((count, 3))
    pts[:, 0] = gen.uniform(-0.5 * l_h, 0.5 * l_h, count)
    pts[:, 1] = gen.uniform(-0.5 * l_v, 0.5 * l_v, count)
    pts[:, 2] = z
    return pts


def _plane_grid(l_h: float, l_v: float, z: float, count: int) -> np.ndarray:
    n = int(np.ceil(np.sqrt(count)))
    xs = (np.arange(n) + 0.5) / n * l_h - 0.5 * l_h
    ys = (np.arange(n) + 0.5) / n * l_v - 0.5 * l_v
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([xx.ravel(), yy.ravel(), np.full(n * n, z)])
    return pts


def _line_points(gen, l: float, z: float, count: int) -> np.ndarray:
    pts = np.zeros((count, 3))
    pts[:, 1] = gen.uniform(-0.5 * l, 0.5 * l, count)
    pts[:, 2] = z
    return pts


def _line_grid(l: float, z: float, count: int) -> np.ndarray:
    pts = np.zeros((count, 3))
    pts[:, 1] = (np.arange(count) + 0.5) / count * l - 0.5 * l
    pts[:, 2] = z
    return pts


def phi_coefficient(p: Cap2dClosedParams) -> PhiEstimate:
    """Phase coefficient for a rectangle pair, averaged over replicate seeds."""

    def points(stream: int):
        if p.sampling == "grid":
            rt = _plane_grid(p.lt_h, p.lt_v, 0.0, p.m_s)
            rr = _plane_grid(p.lr_h, p.lr_v, p.distance, p.n_s)
            return rt, rt.copy(), rr
        gen = SeededSampler(p.seed, stream).generator()
        rt = _plane_points(gen, p.lt_h, p.lt_v, 0.0, p.m_s)
        rt2 = _plane_points(gen, p.lt_h, p.lt_v, 0.0, p.m_s)
        rr = _plane_points(gen, p.lr_h, p.lr_v, p.distance, p.n_s)
        return rt, rt2, rr

    return _phi_estimate(points, p.k0, 1 if p.sampling == "grid" else p.replicates)


def phi_coefficient_line(l_t: float, l_r: float, distance: float, k0: float,
                         m_s: int = 64, n_s: int = 64, seed: int = 0,
                         replicates: int = 8, sampling: str = "random") -> PhiEstimate:
    """Phase coefficient for a line-segment pair."""
    if sampling not in ("random", "grid"):
        raise ArgumentError(f"sampling must be 'random' or 'grid', got {sampling}")

    def points(stream: int):
        if sampling == "grid":
            rt = _line_grid(l_t, 0.0, m_s)
            rr = _line_grid(l_r, distance, n_s)
            return rt, rt.copy(), rr
        gen = SeededSampler(seed, stream).generator()
        rt = _line_points(gen, l_t, 0.0, m_s)
        rt2 = _line_points(gen, l_t, 0.0, m_s)
        rr = _line_points(gen, l_r, distance, n_s)
        return rt, rt2, rr

    return _phi_estimate(points, k0, 1 if sampling == "grid" else replicates)


def _phi_estimate(point_factory, k0: float, replicates: int) -> PhiEstimate:
    values = []
    count_tx = count_rx = 0
    for stream in range(replicates):
        rt, rt2, rr = point_factory(stream)
        count_tx, count_rx = rt.shape[0], rr.shape[0]
        values.append(_phi_from_points(rt, rt2, rr, k0))
    arr = np.array(values)
    spread = float(np.std(arr)) if arr.size > 1 else 0.0
    return PhiEstimate(float(np.mean(arr)), spread, tuple(arr.tolist()),
                       count_tx, count_rx)


# ---------------------------------------------------------------------------
# Closed forms for the continuous designs.
# ---------------------------------------------------------------------------


def correlation_power_xi(p: Cap2dClosedParams, phi: float) -> float:
    """Closed-form integrated squared correlation kernel, times phi."""
    d = p.distance
    d2 = d * d
    lth2 = p.lt_h ** 2
    ltv2 = p.lt_v ** 2
    m3 = p.mu3
    return phi * (4.0 * m3 * lth2 * ltv2 / (d2 * (4.0 * d2 + lth2))
                  + 2.0 * m3 * p.lt_h * ltv2 / d ** 3 * np.arctan(p.lt_h / (2.0 * d))
                  + 16.0 * m3 * ltv2 / (4.0 * d2 + lth2)
                  - 4.0 * m3 * ltv2 / d2)


@dataclass(frozen=True)
class Cap2dClosedResult:
    value: float
    gain: float
    xi: float
    phi: PhiEstimate


def cap2d_edof_closed_detail(p: Cap2dClosedParams) -> Cap2dClosedResult:
    gain = channel_gain_gamma(p)
    phi = phi_coefficient(p)
    xi = correlation_power_xi(p, phi.value)
    if not xi > 0.0:
        raise NumericalError(f"correlation power came out non-positive ({xi})")
    return Cap2dClosedResult(gain * gain / xi, gain, xi, phi)


def cap2d_edof_closed(p: Cap2dClosedParams) -> float:
    """Closed-form EDoF of a continuous rectangle pair."""
    return cap2d_edof_closed_detail(p).value


def cap2d_edof_approx_large_tx(p: Cap2dClosedParams) -> float:
    """Simplified closed form valid when the transmitter dwarfs the receiver.

    Warns when the transmit/receive side ratio is below 5, where the
    approximation degrades.
    """
    ratio = min(p.lt_h / p.lr_h, p.lt_v / p.lr_v)
    if ratio < LARGE_TX_RATIO:
        warnings.warn(
            f"large-transmitter approximation used at size ratio {ratio:.2f} (< {LARGE_TX_RATIO})",
            stacklevel=2)
    gain = 2.0 * p.lr_h * MU0 * t_function(0.5 * p.lt_h, p)
    phi = phi_coefficient(p)
    xi = correlation_power_xi(p, phi.value)
    return gain * gain / xi


def cap1d_edof_closed(l_t: float, l_r: float, distance: float, k0: float,
                      m_s: int = 64, n_s: int = 64, seed: int = 0,
                      replicates: int = 8, sampling: str = "random") -> float:
    """Closed-form EDoF of a continuous line-segment pair."""
    for name, value in (("l_t", l_t), ("l_r", l_r), ("distance", distance), ("k0", k0)):
        if not value > 0:
            raise ArgumentError(f"{name} must be positive")
    d2 = distance * distance
    num = 2.0 * l_t * l_r - d2 * np.log(((l_t + l_r) ** 2 + 4.0 * d2)
                                        / ((l_t - l_r) ** 2 + 4.0 * d2))
    phi = phi_coefficient_line(l_t, l_r, distance, k0, m_s, n_s, seed,
                               replicates, sampling)
    return num * num / (phi.value * (l_t * l_r) ** 2)


def cap1d_gain(l_t: float, l_r: float, distance: float) -> float:
    """Integrated squared gain of the line-segment pair (closed form)."""
    d2 = distance * distance
    return MU0 * (2.0 * l_t * l_r - d2 * np.log(((l_t + l_r) ** 2 + 4.0 * d2)
                                                / ((l_t - l_r) ** 2 + 4.0 * d2)))


# ---------------------------------------------------------------------------
# Discrete planar/linear arrays: exact ratio of the paraxial phase sums.
# ---------------------------------------------------------------------------


def _planar_closed(tx_xy: np.ndarray, rx_xy: np.ndarray, distance: float,
                   k0: float) -> tuple[float, float]:
    """(closed-form EDoF, integrated squared gain) of a discrete planar link."""
    w, inv_sq_sum = get_kernels().planar_phase_matrix(
        np.ascontiguousarray(tx_xy[:, 0]), np.ascontiguousarray(tx_xy[:, 1]),
        np.ascontiguousarray(rx_xy[:, 0]), np.ascontiguousarray(rx_xy[:, 1]),
        distance, k0)
    r = w.conj().T @ w
    den = float(np.sum(r.real ** 2 + r.imag ** 2))
    num = distance ** 4 * inv_sq_sum ** 2
    return num / den, MU0 * inv_sq_sum


def upa_edof_closed_detail(link: LinkConfig) -> tuple[float, float]:
    if link.family != "upa":
        raise ArgumentError(f"upa_edof_closed needs a planar-array link, got {link.family}")
    return _planar_closed(link.tx_positions()[:, :2], link.rx_positions()[:, :2],
                          link.distance, link.wave.wavenumber)


def upa_edof_closed(link: LinkConfig) -> float:
    """Closed-form EDoF of a planar dipole array link (scalar kernel)."""
    return upa_edof_closed_detail(link)[0]


def ula_edof_closed_detail(link: LinkConfig) -> tuple[float, float]:
    if link.family != "ula":
        raise ArgumentError(f"ula_edof_closed needs a linear-array link, got {link.family}")
    return _planar_closed(link.tx_positions()[:, :2], link.rx_positions()[:, :2],
                          link.distance, link.wave.wavenumber)


def ula_edof_closed(link: LinkConfig) -> float:
    """Closed-form EDoF of a linear dipole array link (scalar kernel)."""
    return ula_edof_closed_detail(link)[0]
