"""Numba @njit implementations of the hot kernels (see _kernels_numpy)."""

from __future__ import annotations

import numpy as np
from numba import njit

FOUR_PI = 4.0 * np.pi


@njit(cache=True)
def scalar_green_matrix(rx, tx, k0):
    n = rx.shape[0]
    m = tx.shape[0]
    out = np.empty((n, m), dtype=np.complex128)
    dmin = np.inf
    for i in range(n):
        for j in range(m):
            dx = rx[i, 0] - tx[j, 0]
            dy = rx[i, 1] - tx[j, 1]
            dz = rx[i, 2] - tx[j, 2]
            d = np.sqrt(dx * dx + dy * dy + dz * dz)
            if d < dmin:
                dmin = d
            out[i, j] = np.exp(-1j * k0 * d) / (FOUR_PI * d)
    return out, dmin


@njit(cache=True)
def dyadic_green_matrix(rx, tx, k0, pols):
    n = rx.shape[0]
    m = tx.shape[0]
    p = pols.shape[0]
    out = np.empty((p * n, p * m), dtype=np.complex128)
    dmin = np.inf
    a = np.empty(3)
    for i in range(n):
        for j in range(m):
            a[0] = rx[i, 0] - tx[j, 0]
            a[1] = rx[i, 1] - tx[j, 1]
            a[2] = rx[i, 2] - tx[j, 2]
            d = np.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
            if d < dmin:
                dmin = d
            a[0] /= d
            a[1] /= d
            a[2] /= d
            g = np.exp(-1j * k0 * d) / (FOUR_PI * d)
            kd = k0 * d
            c1 = 1.0 + 1j / kd - 1.0 / (kd * kd)
            c2 = 3.0 / (kd * kd) - 3j / kd - 1.0
            for li in range(p):
                al = a[pols[li]]
                for qi in range(p):
                    eta = c2 * al * a[pols[qi]]
                    if pols[li] == pols[qi]:
                        eta = eta + c1
                    out[li * n + i, qi * m + j] = eta * g
    return out, dmin


@njit(cache=True)
def planar_phase_matrix(tx_x, tx_y, rx_x, rx_y, dist, k0):
    m = tx_x.shape[0]
    n = rx_x.shape[0]
    w = np.empty((n, m), dtype=np.complex128)
    s = 0.0
    d2 = dist * dist
    c = -k0 / dist
    for i in range(n):
        for j in range(m):
            dx = rx_x[i] - tx_x[j]
            dy = rx_y[i] - tx_y[j]
            s += 1.0 / (d2 + dx * dx + dy * dy)
            w[i, j] = np.exp(1j * (c * (rx_x[i] * tx_x[j] + rx_y[i] * tx_y[j])))
    return w, s


@njit(cache=True)
def phase_factor_sum(d1, d2, k0):
    ns = d1.shape[0]
    ms = d1.shape[1]
    mu = d2.shape[1]
    e1 = np.empty((ns, ms), dtype=np.complex128)
    e2 = np.empty((ns, mu), dtype=np.complex128)
    for k in range(ns):
        for o in range(ms):
            e1[k, o] = np.exp(1j * k0 * d1[k, o])
        for u in range(mu):
            e2[k, u] = np.exp(-1j * k0 * d2[k, u])
    total = 0.0
    for o in range(ms):
        for u in range(mu):
            acc = 0.0 + 0.0j
            for k in range(ns):
                acc += e1[k, o] * e2[k, u]
            total += acc.real * acc.real + acc.imag * acc.imag
    return total


@njit(cache=True)
def jacobi_eigh(a, tol=1e-12, max_sweeps=100):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    diag = np.empty(n)
    if n == 1:
        diag[0] = a[0, 0].real
        return diag, v
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    scale = np.sqrt(scale)
    if scale == 0.0:
        for i in range(n):
            diag[i] = 0.0
        return diag, v
    for _ in range(max_sweeps):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += a[i, j].real ** 2 + a[i, j].imag ** 2
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
                phc = np.conj(ph)
                for i in range(n):
                    colp = a[i, p]
                    colq = a[i, q]
                    a[i, p] = c * colp + s * phc * colq
                    a[i, q] = -s * ph * colp + c * colq
                for i in range(n):
                    rowp = a[p, i]
                    rowq = a[q, i]
                    a[p, i] = c * rowp + s * ph * rowq
                    a[q, i] = -s * phc * rowp + c * rowq
                a[p, p] = alpha * c * c + beta * s * s + 2.0 * s * c * gam
                a[q, q] = alpha * s * s + beta * c * c - 2.0 * s * c * gam
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vp = v[i, p]
                    vq = v[i, q]
                    v[i, p] = c * vp + s * phc * vq
                    v[i, q] = -s * ph * vp + c * vq
    for i in range(n):
        diag[i] = a[i, i].real
    return diag, v
