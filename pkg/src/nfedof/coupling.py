"""Mutual-coupling model for dipole arrays.

Self impedance of a finite dipole and the classical induced-EMF closed forms
for the mutual impedance of two parallel dipoles in the three canonical
placements (side by side, collinear, parallel in echelon).  Array elements
are taken as thin dipoles oriented along the in-plane vertical axis, so two
antennas in the same row couple side by side, two in the same column couple
collinearly, and any other pair couples in echelon.  The induced-EMF forms
are referred to the current maxima; by default they are converted to the
input terminals (divide by sin^2(k*l/2)) so that they combine consistently
with the input-referred self impedance on the diagonal.

Two matrices derive from the impedance matrix Z_C and the load Z_L:

* the mutual mixing matrix C = (Z_C + Z_L I) / (Z_A + Z_L), which models how
  neighboring elements' voltages blend into each port (identity when all
  mutual terms vanish), and
* the decoupling matrix Z = (Z_A + Z_L) (Z_C + Z_L I)^(-1) = C^(-1), the
  load-side correction that undoes that blend.

``coupled_edof`` applies the mutual mixing by default (this is the variant
whose EDoF-versus-count curve shows the expected rise-then-degrade shape);
the decoupling orientation is available via ``mixing="decoupling"``.  The
EDoF is invariant to the scalar normalization of either matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import (ChannelMatrix, LinkConfig, PolarizationSet,
                      assemble_dyadic, assemble_scalar)
from .edof import EdofResult, METHOD_TRACE_RATIO, edof_trace_ratio
from .errors import ArgumentError, NumericalError
from .geometry import UlaGeometry, UpaGeometry
from .numerics import EULER_GAMMA, sici

# condition-number ceiling for the impedance inversion
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class CouplingParams:
    """Dipole and load parameters of the coupling model.

    Defaults: 50 ohm load, free-space intrinsic impedance 120*pi, and (via
    ``for_wavelength``) dipole length 0.1 wavelength with wire radius 1e-5
    wavelength.  ``euler_gamma`` defaults to the full-precision constant; a
    truncated value (0.577) makes the short-dipole radiation resistance go
    negative through cancellation.
    """

    dipole_length: float
    wire_radius: float
    z_load: complex = 50.0 + 0.0j
    intrinsic_impedance: float = 120.0 * np.pi
    euler_gamma: float = EULER_GAMMA

    def __post_init__(self):
        if not self.dipole_length > 0:
            raise ArgumentError("dipole length must be positive")
        if not self.wire_radius > 0:
            raise ArgumentError("wire radius must be positive")
        if self.wire_radius > 1e-2 * self.dipole_length:
            raise ArgumentError("wire radius must be <= 1% of the dipole length")

    @classmethod
    def for_wavelength(cls, wavelength: float, length_fraction: float = 0.1,
                       radius_fraction: float = 1e-5, **kwargs) -> "CouplingParams":
        return cls(length_fraction * wavelength, radius_fraction * wavelength, **kwargs)


def self_impedance(p: CouplingParams, k0: float) -> complex:
    """Input impedance R + jX of an isolated thin dipole."""
    kl = k0 * p.dipole_length
    g0 = p.euler_gamma
    eta = p.intrinsic_impedance
    si_kl, ci_kl = (float(v[0]) for v in sici(np.array([kl])))
    si_2kl, ci_2kl = (float(v[0]) for v in sici(np.array([2.0 * kl])))
    _, ci_rad = (float(v[0]) for v in sici(np.array([2.0 * k0 * p.wire_radius ** 2
                                                     / p.dipole_length])))
    s2 = np.sin(0.5 * kl) ** 2
    r = eta / (2.0 * np.pi * s2) * (
        g0 + np.log(kl) - ci_kl
        + 0.5 * np.sin(kl) * (si_2kl - 2.0 * si_kl)
        + 0.5 * np.cos(kl) * (g0 + np.log(0.5 * kl) + ci_2kl - 2.0 * ci_kl))
    x = eta / (4.0 * np.pi * s2) * (
        2.0 * si_kl
        + np.cos(kl) * (2.0 * si_kl - si_2kl)
        - np.sin(kl) * (2.0 * ci_kl - ci_2kl - ci_rad))
    return complex(r, x)


# ---------------------------------------------------------------------------
# Induced-EMF mutual impedance between two identical parallel thin dipoles
# of length l, wavenumber k.  All forms are vectorized over the separations.
# ---------------------------------------------------------------------------


def mutual_side_by_side(d, l: float, k: float, eta: float) -> np.ndarray:
    """Dipoles side by side at perpendicular separation d."""
    d = np.asarray(d, dtype=float)
    u0 = k * d
    root = np.sqrt(d * d + l * l)
    u1 = k * (root + l)
    u2 = k * (root - l)
    si0, ci0 = sici(u0)
    si1, ci1 = sici(u1)
    si2, ci2 = sici(u2)
    c = eta / (4.0 * np.pi)
    r = c * (2.0 * ci0 - ci1 - ci2)
    x = -c * (2.0 * si0 - si1 - si2)
    return r + 1j * x


def mutual_collinear(h, l: float, k: float, eta: float) -> np.ndarray:
    """Dipoles on a common axis, centers separated by h (requires h > l)."""
    h = np.asarray(h, dtype=float)
    if np.any(h <= l):
        raise NumericalError(
            f"collinear dipoles overlap: center separation min {h.min():.4g} m "
            f"<= dipole length {l:.4g} m")
    v0 = k * h
    si_2h, ci_2h = sici(2.0 * v0)
    si_p, ci_p = sici(2.0 * k * (h + l))
    si_m, ci_m = sici(2.0 * k * (h - l))
    log_term = np.log((h * h - l * l) / (h * h))
    c = eta / (8.0 * np.pi)
    ci_bracket_r = -2.0 * ci_2h + ci_p + ci_m - log_term
    si_bracket = 2.0 * si_2h - si_p - si_m
    ci_bracket_x = 2.0 * ci_2h - ci_p - ci_m - log_term
    r = -c * np.cos(v0) * ci_bracket_r + c * np.sin(v0) * si_bracket
    x = -c * np.cos(v0) * si_bracket + c * np.sin(v0) * ci_bracket_x
    return r + 1j * x


def mutual_echelon(d, h, l: float, k: float, eta: float) -> np.ndarray:
    """Dipoles offset both along (h) and across (d > 0) their axes."""
    d = np.asarray(d, dtype=float)
    h = np.asarray(h, dtype=float)
    if np.any(d <= 0):
        raise ArgumentError("echelon placement requires a positive transverse offset")
    w0 = k * h
    r0 = np.sqrt(d * d + h * h)
    rm = np.sqrt(d * d + (h - l) ** 2)
    rp = np.sqrt(d * d + (h + l) ** 2)
    si_a, ci_a = sici(k * (r0 + h))
    si_ap, ci_ap = sici(k * (r0 - h))
    si_b, ci_b = sici(k * (rm + (h - l)))
    si_bp, ci_bp = sici(k * (rm - (h - l)))
    si_c, ci_c = sici(k * (rp + (h + l)))
    si_cp, ci_cp = sici(k * (rp - (h + l)))
    c = eta / (8.0 * np.pi)
    r = (-c * np.cos(w0) * (-2.0 * ci_a - 2.0 * ci_ap + ci_b + ci_bp + ci_c + ci_cp)
         + c * np.sin(w0) * (2.0 * si_a - 2.0 * si_ap - si_b + si_bp - si_c + si_cp))
    x = (-c * np.cos(w0) * (2.0 * si_a + 2.0 * si_ap - si_b - si_bp - si_c - si_cp)
         + c * np.sin(w0) * (2.0 * ci_a - 2.0 * ci_ap - ci_b + ci_bp - ci_c + ci_cp))
    return r + 1j * x


@dataclass(frozen=True)
class ImpedanceMatrix:
    """Symmetric mutual-impedance matrix with constant diagonal Z_A."""

    values: np.ndarray
    provenance: str  # "computed" or "loaded"

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ArgumentError("impedance matrix must be square")
        scale = np.linalg.norm(v)
        if scale > 0 and np.linalg.norm(v - v.T) > 1e-9 * scale:
            raise ArgumentError("impedance matrix must be symmetric (reciprocity)")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def self_impedance(self) -> complex:
        return complex(self.values[0, 0])


def _displacement_table(n_h: int, n_v: int, dh: float, dv: float,
                        p: CouplingParams, k0: float, referred: str) -> np.ndarray:
    """Mutual impedance indexed by (row offset, column offset)."""
    eta = p.intrinsic_impedance
    l = p.dipole_length
    table = np.empty((n_v, n_h), dtype=np.complex128)
    if n_h > 1:
        table[0, 1:] = mutual_side_by_side(np.arange(1, n_h) * dh, l, k0, eta)
    if n_v > 1:
        table[1:, 0] = mutual_collinear(np.arange(1, n_v) * dv, l, k0, eta)
    if n_h > 1 and n_v > 1:
        dj = np.repeat(np.arange(1, n_v), n_h - 1)
        di = np.tile(np.arange(1, n_h), n_v - 1)
        table[1:, 1:] = mutual_echelon(di * dh, dj * dv, l, k0, eta).reshape(n_v - 1, n_h - 1)
    if referred == "input":
        table /= np.sin(0.5 * k0 * l) ** 2
    elif referred != "max":
        raise ArgumentError(f"referred must be 'input' or 'max', got {referred!r}")
    table[0, 0] = self_impedance(p, k0)
    return table


def mutual_impedance_matrix(geometry, p: CouplingParams, k0: float,
                            referred: str = "input") -> ImpedanceMatrix:
    """Pairwise impedance matrix of a dipole array.

    Placement per pair: same row -> side by side, same column -> collinear,
    otherwise parallel in echelon; the diagonal is the self impedance.
    ``referred`` selects terminal referral of the mutual terms: "input"
    (default; consistent with the input-referred diagonal) or "max" (the
    current-maximum values of the classical tables; identical for
    half-wavelength dipoles).
    """
    if isinstance(geometry, UpaGeometry):
        n_h, n_v = geometry.m_h, geometry.m_v
        dh, dv = geometry.spacing_h, geometry.spacing_v
    elif isinstance(geometry, UlaGeometry):
        # a line along y is a single column of the planar convention
        n_h, n_v = 1, geometry.m
        dh, dv = geometry.spacing, geometry.spacing
    else:
        raise ArgumentError(f"mutual impedance needs a dipole array, got {type(geometry)}")
    table = _displacement_table(n_h, n_v, dh, dv, p, k0, referred)
    idx = np.arange(n_h * n_v)
    col = idx % n_h
    row = idx // n_h
    di = np.abs(col[:, None] - col[None, :])
    dj = np.abs(row[:, None] - row[None, :])
    return ImpedanceMatrix(table[dj, di], "computed")


def coupling_matrix(z_c: ImpedanceMatrix | np.ndarray, z_a: complex,
                    z_l: complex) -> np.ndarray:
    """Decoupling matrix (Z_A + Z_L) (Z_C + Z_L I)^(-1), one refinement step."""
    zc = z_c.values if isinstance(z_c, ImpedanceMatrix) else np.asarray(z_c)
    n = zc.shape[0]
    a = zc + z_l * np.eye(n)
    cond = np.linalg.cond(a, 1)
    if not np.isfinite(cond) or cond >= MAX_CONDITION:
        raise NumericalError(
            f"impedance system is ill-conditioned (1-norm condition {cond:.3e})")
    b = (z_a + z_l) * np.eye(n, dtype=np.complex128)
    x = np.linalg.solve(a, b)
    x += np.linalg.solve(a, b - a @ x)
    return x


def mutual_mixing_matrix(z_c: ImpedanceMatrix | np.ndarray, z_a: complex,
                         z_l: complex) -> np.ndarray:
    """Forward mixing (Z_C + Z_L I) / (Z_A + Z_L); identity without coupling."""
    zc = z_c.values if isinstance(z_c, ImpedanceMatrix) else np.asarray(z_c)
    n = zc.shape[0]
    return (zc + z_l * np.eye(n)) / (z_a + z_l)


def coupling_matrices_for_link(link: LinkConfig, p: CouplingParams,
                               mixing: str = "mutual") -> tuple[np.ndarray, np.ndarray]:
    """(Z_t, Z_r) computed from the link geometry and coupling parameters."""
    if mixing not in ("mutual", "decoupling"):
        raise ArgumentError(f"mixing must be 'mutual' or 'decoupling', got {mixing!r}")
    k0 = link.wave.wavenumber
    z_a = self_impedance(p, k0)
    build = mutual_mixing_matrix if mixing == "mutual" else coupling_matrix
    z_t = build(mutual_impedance_matrix(link.tx, p, k0), z_a, p.z_load)
    z_r = build(mutual_impedance_matrix(link.rx, p, k0), z_a, p.z_load)
    return z_t, z_r


def coupled_channel(link: LinkConfig, pols: PolarizationSet | None,
                    z_t: np.ndarray, z_r: np.ndarray) -> ChannelMatrix:
    """Channel with coupling applied: Z_r H Z_t per polarization block."""
    if pols is None:
        h = assemble_scalar(link)
        return ChannelMatrix(z_r @ h.values @ z_t, h.n_rx, h.n_tx, ())
    h = assemble_dyadic(link, pols)
    out = np.empty_like(h.values)
    for p_i in range(pols.count):
        for q_i in range(pols.count):
            out[p_i * h.n_rx:(p_i + 1) * h.n_rx, q_i * h.n_tx:(q_i + 1) * h.n_tx] = \
                z_r @ h.block(p_i, q_i) @ z_t
    return ChannelMatrix(out, h.n_rx, h.n_tx, pols.axes)


def coupled_edof(link: LinkConfig, pols: PolarizationSet | None,
                 params: CouplingParams | None = None,
                 z_t: np.ndarray | ImpedanceMatrix | None = None,
                 z_r: np.ndarray | ImpedanceMatrix | None = None,
                 mixing: str = "mutual") -> EdofResult:
    """Trace-ratio EDoF of the mutually coupled channel.

    Coupling matrices are computed from ``params`` unless both ``z_t`` and
    ``z_r`` are supplied directly.  Supplied ImpedanceMatrix values (e.g.
    loaded from an impedance file) are mapped through the selected mixing;
    plain arrays are applied as-is.
    """
    if z_t is None or z_r is None:
        if params is None:
            raise ArgumentError("either coupling params or both Z matrices are required")
        z_t, z_r = coupling_matrices_for_link(link, params, mixing)
    else:
        if isinstance(z_t, ImpedanceMatrix) or isinstance(z_r, ImpedanceMatrix):
            if params is None:
                raise ArgumentError("coupling params needed to turn impedance matrices "
                                    "into coupling matrices")
            z_a = self_impedance(params, link.wave.wavenumber)
            build = mutual_mixing_matrix if mixing == "mutual" else coupling_matrix
            if isinstance(z_t, ImpedanceMatrix):
                z_t = build(z_t, z_a, params.z_load)
            if isinstance(z_r, ImpedanceMatrix):
                z_r = build(z_r, z_a, params.z_load)
    h = coupled_channel(link, pols, np.asarray(z_t), np.asarray(z_r))
    base = edof_trace_ratio(h)
    diag = dict(base.diagnostics)
    diag["coupled"] = 1.0
    return EdofResult(base.value, METHOD_TRACE_RATIO, diag)


# ---------------------------------------------------------------------------
# Impedance matrix text format:
#   line 1:  "NFZC v1 <n>"
#   then n*n lines "<row> <col> <re_ohms> <im_ohms>" with 0-based indices.
# ---------------------------------------------------------------------------


def save_impedance_matrix(z: ImpedanceMatrix | np.ndarray, path) -> None:
    values = z.values if isinstance(z, ImpedanceMatrix) else np.asarray(z)
    n = values.shape[0]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"NFZC v1 {n}\n")
        for i in range(n):
            for j in range(n):
                fh.write(f"{i} {j} {values[i, j].real:.17g} {values[i, j].imag:.17g}\n")


def load_impedance_matrix(path) -> ImpedanceMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "NFZC" or header[1] != "v1":
            raise ArgumentError(f"bad impedance file header: {' '.join(header)!r}")
        n = int(header[2])
        values = np.zeros((n, n), dtype=np.complex128)
        seen = 0
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ArgumentError(f"bad impedance file line: {line!r}")
            i, j = int(parts[0]), int(parts[1])
            if not (0 <= i < n and 0 <= j < n):
                raise ArgumentError(f"impedance index ({i}, {j}) out of range for n={n}")
            values[i, j] = complex(float(parts[2]), float(parts[3]))
            seen += 1
    if seen != n * n:
        raise ArgumentError(f"impedance file has {seen} entries, expected {n * n}")
    return ImpedanceMatrix(values, "loaded")
