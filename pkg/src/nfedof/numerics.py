"""Self-contained numerical kernels: Gauss-Legendre quadrature, the sine and
cosine integrals, a Hermitian eigensolver, and counter-based seeded sampling.

All routines are pure and reentrant; returned arrays are freshly allocated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .errors import ArgumentError

EULER_GAMMA = 0.5772156649015329

_MAX_QUAD_ORDER = 512


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights on [-1, 1]; nodes strictly increasing, symmetric about 0."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def scaled(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Affine image of the rule on the interval [a, b]."""
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        return mid + half * self.nodes, half * self.weights

    def integrate(self, f, a: float = -1.0, b: float = 1.0) -> float:
        x, w = self.scaled(a, b)
        return float(np.sum(w * f(x)))


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order (1..512).

    Nodes are found by Newton iteration on the Legendre recurrence and then
    symmetrized, so the rule integrates polynomials of degree 2*order-1
    exactly and the node set is symmetric about 0 to machine precision.
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise ArgumentError("quadrature order must be an integer")
    if order < 1 or order > _MAX_QUAD_ORDER:
        raise ArgumentError(f"quadrature order must be in [1, {_MAX_QUAD_ORDER}], got {order}")
    if order == 1:
        return QuadratureRule(np.zeros(1), np.full(1, 2.0), 1)
    i = np.arange(order)
    x = np.cos(np.pi * (4.0 * i + 3.0) / (4.0 * order + 2.0))
    for _ in range(100):
        p_prev = np.ones_like(x)
        p = x.copy()
        for k in range(2, order + 1):
            p_prev, p = p, ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k
        dp = order * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, order + 1):
        p_prev, p = p, ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k
    dp = order * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    idx = np.argsort(x)
    x = x[idx]
    w = w[idx]
    # enforce exact symmetry (pairs are analytically mirror images)
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(x, w, int(order))


def tensor_product(rule_x: QuadratureRule, rule_y: QuadratureRule,
                   ax: float, bx: float, ay: float, by: float):
    """Flattened 2-D tensor rule over [ax,bx] x [ay,by]: (x, y, w) arrays."""
    x, wx = rule_x.scaled(ax, bx)
    y, wy = rule_y.scaled(ay, by)
    xx = np.repeat(x, y.size)
    yy = np.tile(y, x.size)
    ww = np.repeat(wx, y.size) * np.tile(wy, x.size)
    return xx, yy, ww


# ---------------------------------------------------------------------------
# Sine and cosine integrals.
#
# Si(x) = int_0^x sin(t)/t dt,  Ci(x) = g0 + ln x + int_0^x (cos t - 1)/t dt.
# Power series below the split point; above it both functions come from the
# exponential integral E1(jx) evaluated with a modified-Lentz continued
# fraction (Ci = -Re E1(jx), Si = pi/2 + Im E1(jx)).  A truncated asymptotic
# expansion cannot reach 1e-10 absolute error near the split, the continued
# fraction can.
# ---------------------------------------------------------------------------

_SICI_SPLIT = 6.0


def _sici_series(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x2 = x * x
    si = x.copy()
    ci = np.zeros_like(x)
    a = x.copy()          # (-1)^m x^(2m+1) / (2m+1)!
    b = np.ones_like(x)   # (-1)^m x^(2m) / (2m)!
    for m in range(1, 60):
        b *= -x2 / ((2.0 * m - 1.0) * (2.0 * m))
        a *= -x2 / ((2.0 * m) * (2.0 * m + 1.0))
        ci_term = b / (2.0 * m)
        si_term = a / (2.0 * m + 1.0)
        ci += ci_term
        si += si_term
        if max(np.max(np.abs(ci_term)), np.max(np.abs(si_term))) < 1e-18:
            break
    ci += EULER_GAMMA + np.log(x)
    return si, ci


def _e1_imag_axis(x: np.ndarray) -> np.ndarray:
    """E1(j*x) for real x > 0 via the continued fraction, vectorized."""
    z = 1j * x
    tiny = 1e-300
    h = z + 1.0
    h = np.where(h == 0, tiny, h)
    c = h.copy()
    d = np.zeros_like(z)
    delta = np.full_like(z, 10.0)
    for k in range(1, 500):
        ak = -float(k * k)
        bk = z + (2.0 * k + 1.0)
        d = bk + ak * d
        d = np.where(d == 0, tiny, d)
        c = bk + ak / c
        c = np.where(c == 0, tiny, c)
        d = 1.0 / d
        delta = c * d
        h = h * delta
        if np.max(np.abs(delta - 1.0)) < 1e-16:
            break
    return np.exp(-z) / h


def _sici_arrays(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    si = np.empty_like(x)
    ci = np.empty_like(x)
    small = x <= _SICI_SPLIT
    if np.any(small):
        si_s, ci_s = _sici_series(x[small])
        si[small] = si_s
        ci[small] = ci_s
    if np.any(~small):
        e1 = _e1_imag_axis(x[~small])
        ci[~small] = -e1.real
        si[~small] = 0.5 * np.pi + e1.imag
    return si, ci


def sine_integral(x: float) -> float:
    """Si(x); odd in x, Si(0) = 0."""
    xf = float(x)
    if xf == 0.0:
        return 0.0
    sign = 1.0 if xf > 0 else -1.0
    si, _ = _sici_arrays(np.array([abs(xf)]))
    return sign * float(si[0])


def cosine_integral(x: float) -> float:
    """Ci(x) for x > 0."""
    xf = float(x)
    if not xf > 0.0:
        raise ArgumentError(f"cosine_integral requires x > 0, got {x}")
    _, ci = _sici_arrays(np.array([xf]))
    return float(ci[0])


def sici(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (Si, Ci) for positive arguments."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ArgumentError("sici requires strictly positive arguments")
    return _sici_arrays(x)


# ---------------------------------------------------------------------------
# Hermitian eigenvalues via cyclic Jacobi sweeps.
# ---------------------------------------------------------------------------

_HERMITIAN_RTOL = 1e-10


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ArgumentError("matrix contains non-finite entries")
    scale = np.linalg.norm(a)
    if scale > 0 and np.linalg.norm(a - a.conj().T) > _HERMITIAN_RTOL * scale:
        raise ArgumentError("matrix is not Hermitian within 1e-10 relative")
    return 0.5 * (a + a.conj().T)


def hermitian_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix."""
    h = _check_hermitian(a)
    w, v = get_kernels().jacobi_eigh(h.copy())
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def hermitian_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    return hermitian_eigh(a)[0]


# ---------------------------------------------------------------------------
# Seeded sampling.  Philox is counter-based, so per-stream draws are
# independent of evaluation order and of the thread schedule.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeededSampler:
    """Deterministic random stream identified by (seed, stream)."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=int(self.seed) & ((1 << 64) - 1),
                                    spawn_key=(int(self.stream) & ((1 << 63) - 1),))
        return np.random.Generator(np.random.Philox(ss))

    def uniform(self, low: float, high: float, size) -> np.ndarray:
        return self.generator().uniform(low, high, size)

    def substream(self, stream: int) -> "SeededSampler":
        return SeededSampler(self.seed, stream)
