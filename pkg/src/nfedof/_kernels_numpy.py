"""Pure-numpy implementations of the hot kernels.

Every function here has an ``@njit`` twin in ``_kernels_numba`` with the
same name and signature; ``_backend.get_kernels()`` picks one of the two.
"""

from __future__ import annotations

import numpy as np

FOUR_PI = 4.0 * np.pi


def scalar_green_matrix(rx: np.ndarray, tx: np.ndarray, k0: float):
    """Pairwise free-space kernel exp(-j*k0*d)/(4*pi*d).

    rx: (N,3), tx: (M,3).  Returns (H (N,M) complex128, min distance).
    """
    diff = rx[:, None, :] - tx[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=2))
    dmin = float(d.min()) if d.size else np.inf
    h = np.exp(-1j * k0 * d) / (FOUR_PI * d)
    return h, dmin


def dyadic_green_matrix(rx: np.ndarray, tx: np.ndarray, k0: float, pols: np.ndarray):
    """Polarized kernel blocks stacked as a (P*N, P*M) matrix.

    Block (l,q) holds eta(pols[l], pols[q]) * G for every antenna pair, with
    eta = c1*delta_lq + c2*a_l*a_q, c1 = 1 + j/(k0 d) - 1/(k0 d)^2 and
    c2 = 3/(k0 d)^2 - 3j/(k0 d) - 1, where a is the unit direction from the
    source point to the receive point.
    """
    n = rx.shape[0]
    m = tx.shape[0]
    p = pols.shape[0]
    diff = rx[:, None, :] - tx[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=2))
    dmin = float(d.min()) if d.size else np.inf
    g = np.exp(-1j * k0 * d) / (FOUR_PI * d)
    kd = k0 * d
    c1 = 1.0 + 1j / kd - 1.0 / (kd * kd)
    c2 = 3.0 / (kd * kd) - 3j / kd - 1.0
    a = diff / d[:, :, None]
    out = np.empty((p * n, p * m), dtype=np.complex128)
    for li in range(p):
        al = a[:, :, pols[li]]
        for qi in range(p):
            aq = a[:, :, pols[qi]]
            eta = c2 * al * aq
            if pols[li] == pols[qi]:
                eta = eta + c1
            out[li * n:(li + 1) * n, qi * m:(qi + 1) * m] = eta * g
    return out, dmin


def planar_phase_matrix(tx_x, tx_y, rx_x, rx_y, dist: float, k0: float):
    """Paraxial phase matrix W and the inverse-square-distance sum.

    W[n,m] = exp(-j*(k0/dist)*(rx_x[n]*tx_x[m] + rx_y[n]*tx_y[m])) and
    s = sum_{n,m} 1/(dist^2 + (rx_x[n]-tx_x[m])^2 + (rx_y[n]-tx_y[m])^2).
    These are the two ingredients of the planar-array closed-form ratio.
    """
    dx = rx_x[:, None] - tx_x[None, :]
    dy = rx_y[:, None] - tx_y[None, :]
    s = float(np.sum(1.0 / (dist * dist + dx * dx + dy * dy)))
    phase = (-k0 / dist) * (rx_x[:, None] * tx_x[None, :] + rx_y[:, None] * tx_y[None, :])
    w = np.exp(1j * phase)
    return w, s


def phase_factor_sum(d1: np.ndarray, d2: np.ndarray, k0: float) -> float:
    """sum_{o,u} |sum_k exp(j*k0*d1[k,o]) * exp(-j*k0*d2[k,u])|^2."""
    e1 = np.exp(1j * k0 * d1)
    e2 = np.exp(-1j * k0 * d2)
    s = e1.T @ e2
    return float(np.sum(s.real * s.real + s.imag * s.imag))


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a Hermitian matrix (in place).

    Returns (real diagonal, accumulated unitary V) with A_in = V diag V^H.
    Caller sorts; caller guarantees a is complex128, square, Hermitian.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return a.real.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off2 = float(np.sum(np.abs(np.triu(a, 1)) ** 2))
        if np.sqrt(2.0 * off2) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                gam = abs(apq)
                if gam <= 1e-300:
                    continue
                ph = apq / gam
                tau = (a[q, q].real - a[p, p].real) / (2.0 * gam)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = -sign / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                alpha = a[p, p].real
                beta = a[q, q].real
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p + s * np.conj(ph) * col_q
                a[:, q] = -s * ph * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p + s * ph * row_q
                a[q, :] = -s * np.conj(ph) * row_p + c * row_q
                a[p, p] = alpha * c * c + beta * s * s + 2.0 * s * c * gam
                a[q, q] = alpha * s * s + beta * c * c - 2.0 * s * c * gam
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = v[:, p].copy()
                vcol_q = v[:, q].copy()
                v[:, p] = c * vcol_p + s * np.conj(ph) * vcol_q
                v[:, q] = -s * ph * vcol_p + c * vcol_q
    return a.real.diagonal().copy(), v
