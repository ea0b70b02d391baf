"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every tolerance is pinned here.  Criteria are asserted exactly as stated;
where a faithful implementation cannot reach a stated band the test is
expected to fail and the measured values are printed for review (see the
project notes for the blocking analyses).

Run with ``pytest tests/test_acceptance.py -v -rA`` to see every line.
"""

import time

import numpy as np
import pytest

from nfedof.channel import (DOUBLE, SINGLE, TRIPLE, LinkConfig,
                            assemble_dyadic, assemble_scalar)
from nfedof.closedform import (Cap2dClosedParams, cap1d_edof_closed,
                               cap2d_edof_closed, gamma1, pdf_f, pdf_g,
                               q_function, t_function, ula_edof_closed,
                               upa_edof_closed)
from nfedof.coupling import CouplingParams, coupled_edof
from nfedof.edof import (cap_edof_dense_grid, cap_edof_scalar_quadrature,
                         edof_trace_ratio, patch_edof)
from nfedof.geometry import (CapLine, CapPlane, PatchUpaGeometry, UlaGeometry,
                             UpaGeometry, WaveParams, rayleigh_distance)
from nfedof.numerics import gauss_legendre, hermitian_eigenvalues
from nfedof.workbench import emit_csv, figure_preset, run_bundle

WAVE = WaveParams.from_wavelength(0.01)
LAM = WAVE.wavelength


def report(num: int, name: str, ok: bool, detail: str) -> str:
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {name}: {detail}"
    print(line)
    return line


def test_criterion_01_trace_ratio_identity():
    """Gram-side trace ratio equals the eigenvalue ratio, 1e-9 relative."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 65))
        m = int(rng.integers(2, 65))
        h = rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))
        gram_side = edof_trace_ratio(h).value
        r = h.conj().T @ h if m <= n else h @ h.conj().T
        lam = np.clip(hermitian_eigenvalues(r), 0.0, None)
        oracle = lam.sum() ** 2 / np.sum(lam * lam)
        worst = max(worst, abs(gram_side - oracle) / oracle)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10.0
    line = report(1, "trace-ratio identity",
                  ok, f"worst rel dev {worst:.2e}, {elapsed:.1f}s")
    assert ok, line


def test_criterion_02_far_field_ranks():
    """Scalar EDoF -> 1 (1%), triple-polarized -> 2 (5%) past 100x Rayleigh."""
    t0 = time.perf_counter()
    side = 10 * LAM
    upa = UpaGeometry.square(10, side)
    d = 100.0 * rayleigh_distance(upa.aperture, upa.aperture, WAVE)
    link = LinkConfig(upa, upa, d, WAVE)
    scalar = edof_trace_ratio(assemble_scalar(link)).value
    triple = edof_trace_ratio(assemble_dyadic(link, TRIPLE)).value
    elapsed = time.perf_counter() - t0
    ok = abs(scalar - 1.0) <= 0.01 and abs(triple - 2.0) / 2.0 <= 0.05 and elapsed < 30
    line = report(2, "far-field ranks", ok,
                  f"scalar {scalar:.4f}, triple {triple:.4f}, {elapsed:.1f}s")
    assert ok, line


def test_criterion_03_planar_linear_closed_vs_direct():
    """Planar/linear closed forms vs direct trace ratio, <= 5% everywhere."""
    t0 = time.perf_counter()
    rows = []
    for m_side in (4, 8):
        for side in (4 * LAM, 10 * LAM):
            for d in (10 * LAM, 30 * LAM):
                upa = UpaGeometry.square(m_side, side)
                link = LinkConfig(upa, upa, d, WAVE)
                direct = edof_trace_ratio(assemble_scalar(link)).value
                closed = upa_edof_closed(link)
                rows.append(("upa", m_side, side / LAM, d / LAM,
                             abs(closed - direct) / direct))
    for m in (16, 64):
        for side in (4 * LAM, 10 * LAM):
            for d in (10 * LAM, 30 * LAM):
                link = LinkConfig(UlaGeometry(m, side), UlaGeometry(m, side), d, WAVE)
                direct = edof_trace_ratio(assemble_scalar(link)).value
                closed = ula_edof_closed(link)
                rows.append(("ula", m, side / LAM, d / LAM,
                             abs(closed - direct) / direct))
    elapsed = time.perf_counter() - t0
    worst = max(r[4] for r in rows)
    bad = [r for r in rows if r[4] > 0.05]
    ok = not bad and elapsed < 120
    detail = f"worst rel dev {worst:.3f} over {len(rows)} points, {elapsed:.1f}s"
    if bad:
        detail += "; over 5%: " + "; ".join(
            f"{kind} n={n} L={l:.0f}lam D={d:.0f}lam dev={dev:.3f}"
            for kind, n, l, d, dev in bad)
    line = report(3, "planar/linear closed forms vs direct", ok, detail)
    assert ok, line


def test_criterion_04_plane_closed_vs_quadrature_and_grid():
    """Rectangle closed form vs quadrature and dense grid, pairwise <= 10%."""
    t0 = time.perf_counter()
    side = 10 * LAM
    tx = CapPlane.square(side)
    results = {}
    for d in (10 * LAM, 26 * LAM):
        quad = cap_edof_scalar_quadrature(tx, tx, d, WAVE, (24, 24),
                                          check_convergence=True).value
        grid = cap_edof_dense_grid(tx, tx, d, WAVE, 4.0).value
        closed = cap2d_edof_closed(
            Cap2dClosedParams.from_planes(tx, tx, d, WAVE, seed=0))
        results[d] = (quad, grid, closed)
    elapsed = time.perf_counter() - t0

    def pair_dev(a, b):
        return abs(a - b) / max(abs(a), abs(b))

    devs = {}
    for d, (quad, grid, closed) in results.items():
        devs[d] = (pair_dev(quad, grid), pair_dev(quad, closed), pair_dev(grid, closed))
    worst = max(max(v) for v in devs.values())
    ok = worst <= 0.10 and elapsed < 600
    detail = ", ".join(
        f"D={d / LAM:.0f}lam quad={results[d][0]:.2f} grid={results[d][1]:.2f} "
        f"closed={results[d][2]:.2f} devs={tuple(round(x, 3) for x in devs[d])}"
        for d in results) + f", {elapsed:.1f}s"
    line = report(4, "plane closed form vs quadrature/grid", ok, detail)
    assert ok, line


def test_criterion_05_dyadic_vs_scalar_gain():
    """Triple/scalar EDoF ratio 2.04 +- 0.25 at D = 26 wavelengths."""
    t0 = time.perf_counter()
    upa = UpaGeometry.square(20, 10 * LAM)  # 2 samples per wavelength
    link = LinkConfig(upa, upa, 26 * LAM, WAVE)
    scalar = edof_trace_ratio(assemble_scalar(link)).value
    triple = edof_trace_ratio(assemble_dyadic(link, TRIPLE)).value
    ratio = triple / scalar
    elapsed = time.perf_counter() - t0
    ok = abs(ratio - 2.04) <= 0.25 and elapsed < 600
    line = report(5, "triple-vs-scalar gain at 26 wavelengths", ok,
                  f"ratio {ratio:.4f} (band 2.04+-0.25), {elapsed:.1f}s")
    assert ok, line


def test_criterion_06_polarization_ladder():
    """Triple/double and triple/single improvements within +-15 points."""
    t0 = time.perf_counter()
    quotes = {12: (23.2, 135.5), 6: (8.6, 113.4)}
    measured = {}
    for n_lam in (12, 6):
        tx = CapPlane.square(n_lam * LAM)
        d = 6 * LAM
        single = cap_edof_dense_grid(tx, tx, d, WAVE, 2.0, SINGLE).value
        double = cap_edof_dense_grid(tx, tx, d, WAVE, 2.0, DOUBLE).value
        triple = cap_edof_dense_grid(tx, tx, d, WAVE, 2.0, TRIPLE).value
        measured[n_lam] = (100 * (triple / double - 1), 100 * (triple / single - 1))
    elapsed = time.perf_counter() - t0
    checks = []
    for n_lam, (q_dbl, q_sgl) in quotes.items():
        m_dbl, m_sgl = measured[n_lam]
        checks.append(abs(m_dbl - q_dbl) <= 15.0)
        checks.append(abs(m_sgl - q_sgl) <= 15.0)
    ok = all(checks) and elapsed < 900
    detail = ", ".join(
        f"L={n}lam tri/dbl {measured[n][0]:.1f}% (quote {quotes[n][0]}), "
        f"tri/sgl {measured[n][1]:.1f}% (quote {quotes[n][1]})"
        for n in (12, 6)) + f", {elapsed:.1f}s"
    line = report(6, "polarization ladder", ok, detail)
    assert ok, line


def test_criterion_07_patch_vs_dipole():
    """Patch gains at 7 per side within +-15 points; gap shrinks to 20."""
    t0 = time.perf_counter()
    side = 10 * LAM
    d = 10 * LAM

    def gains(m_v):
        upa = UpaGeometry.square(m_v, side)
        patch = PatchUpaGeometry(upa, 0.5 * LAM, 0.5 * LAM)
        dlink = LinkConfig(upa, upa, d, WAVE)
        plink = LinkConfig(patch, patch, d, WAVE)
        dip_s = edof_trace_ratio(assemble_scalar(dlink)).value
        dip_d = edof_trace_ratio(assemble_dyadic(dlink, TRIPLE)).value
        pat_s = patch_edof(plink, SINGLE, per_element_order=2).value
        pat_d = patch_edof(plink, TRIPLE, per_element_order=2).value
        return 100 * (pat_s / dip_s - 1), 100 * (pat_d / dip_d - 1)

    g7 = gains(7)
    g14 = gains(14)
    g20 = gains(20)
    elapsed = time.perf_counter() - t0
    bands_ok = abs(g7[0] - 66.5) <= 15.0 and abs(g7[1] - 53.7) <= 15.0
    shrink_ok = g7[0] > g14[0] > g20[0] and g7[1] > g14[1] > g20[1]
    ok = bands_ok and shrink_ok and elapsed < 600
    line = report(7, "patch-vs-dipole gains", ok,
                  f"at 7/side scalar {g7[0]:.1f}% (quote 66.5), dyadic {g7[1]:.1f}% "
                  f"(quote 53.7); gaps {g7[0]:.1f}->{g14[0]:.1f}->{g20[0]:.1f} "
                  f"(scalar), {g7[1]:.1f}->{g14[1]:.1f}->{g20[1]:.1f} (dyadic), "
                  f"{elapsed:.0f}s")
    assert ok, line


def test_criterion_08_plane_vs_segment_equal_aperture():
    """Closed-form 2D/1D ratio 2.099 +- 0.3 at aperture 4 m, D = 20 m."""
    t0 = time.perf_counter()
    wave30 = WaveParams(30e9)
    aperture = 4.0
    d = 20.0
    side = aperture / np.sqrt(2.0)  # equal diagonal aperture
    p2 = Cap2dClosedParams(side, side, side, side, d, wave30.wavenumber, seed=0)
    plane = cap2d_edof_closed(p2)
    segment = cap1d_edof_closed(aperture, aperture, d, wave30.wavenumber, seed=0)
    ratio = plane / segment
    elapsed = time.perf_counter() - t0
    ok = abs(ratio - 2.099) <= 0.3 and elapsed < 60
    line = report(8, "2D-vs-1D equal aperture", ok,
                  f"plane {plane:.2f}, segment {segment:.2f}, ratio {ratio:.4f} "
                  f"(band 2.099+-0.3), {elapsed:.1f}s")
    assert ok, line


def test_criterion_09_rectangle_diminishing_returns():
    """Transmit-height growth improvements within +-8 points of the quotes."""
    t0 = time.perf_counter()
    wave30 = WaveParams(30e9)

    def closed(lt_v):
        p = Cap2dClosedParams(1.0, lt_v, 1.0, 1.5, 8.0, wave30.wavenumber, seed=0)
        return cap2d_edof_closed(p)

    low = 100 * (closed(1.0) / closed(0.5) - 1)
    high = 100 * (closed(3.0) / closed(2.5) - 1)
    elapsed = time.perf_counter() - t0
    ok = abs(low - 22.3) <= 8.0 and abs(high - 2.7) <= 8.0 and elapsed < 60
    line = report(9, "rectangle diminishing returns", ok,
                  f"0.5->1.0 m: {low:.1f}% (quote 22.3), 2.5->3.0 m: {high:.1f}% "
                  f"(quote 2.7), {elapsed:.1f}s")
    assert ok, line


def test_criterion_10_coupling_behavior():
    """Coupled curve rises then degrades; end gaps near the quoted values."""
    t0 = time.perf_counter()
    params = CouplingParams.for_wavelength(LAM)
    counts = (2, 4, 6, 8, 10, 12, 14, 16)
    gaps = {}
    curves = {}
    for tag, pols in (("scalar", None), ("dyadic", TRIPLE)):
        coupled = []
        uncoupled = []
        for m_v in counts:
            upa = UpaGeometry.square(m_v, 2 * LAM)
            link = LinkConfig(upa, upa, 1 * LAM, WAVE)
            h = assemble_scalar(link) if pols is None else assemble_dyadic(link, pols)
            uncoupled.append(edof_trace_ratio(h).value)
            coupled.append(coupled_edof(link, pols, params).value)
        curves[tag] = coupled
        gaps[tag] = 100 * (uncoupled[-1] - coupled[-1]) / uncoupled[-1]
    elapsed = time.perf_counter() - t0
    shape_ok = True
    for curve in curves.values():
        peak = int(np.argmax(curve))
        shape_ok &= 0 < peak < len(curve) - 1 and curve[-1] < curve[peak]
    bands_ok = abs(gaps["dyadic"] - 12.6) <= 5.0 and abs(gaps["scalar"] - 11.0) <= 5.0
    ok = shape_ok and bands_ok and elapsed < 300
    line = report(10, "mutual-coupling behavior", ok,
                  f"interior max {'yes' if shape_ok else 'no'}; end gaps "
                  f"dyadic {gaps['dyadic']:.1f}% (quote 12.6), scalar "
                  f"{gaps['scalar']:.1f}% (quote 11.0), {elapsed:.0f}s")
    assert ok, line


def test_criterion_11_antiderivative_calculus():
    """T' = gamma1 and Q' = x*gamma1 at 50 random parameter sets; PDFs
    integrate to 1 within 1e-10."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        p = Cap2dClosedParams(rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                              rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                              rng.uniform(0.3, 20), WAVE.wavenumber)
        x = rng.uniform(0.0, 0.5 * (p.lt_h + p.lr_h))
        h = 1e-5 * max(x, 1.0)
        scale = x * (2 * p.lt_v * p.lr_v / (p.distance ** 2 + x * x)
                     + abs(np.log((p.mu1 + 4 * x * x) / (p.mu2 + 4 * x * x)))) + 1e-30
        fd_t = (t_function(x + h, p) - t_function(x - h, p)) / (2 * h)
        fd_q = (q_function(x + h, p) - q_function(x - h, p)) / (2 * h)
        worst = max(worst,
                    abs(fd_t - gamma1(x, p)) / max(abs(gamma1(x, p)), scale / max(x, 1e-30)),
                    abs(fd_q - x * gamma1(x, p)) / max(abs(x * gamma1(x, p)), scale))
    rule = gauss_legendre(60)
    pdf_err = 0.0
    for _ in range(10):
        p = Cap2dClosedParams(rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                              rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                              rng.uniform(0.3, 20), WAVE.wavenumber)
        for pdf, lo_hi in ((pdf_f, (p.lt_h, p.lr_h)), (pdf_g, (p.lt_v, p.lr_v))):
            knee = 0.5 * abs(lo_hi[0] - lo_hi[1])
            top = 0.5 * (lo_hi[0] + lo_hi[1])
            f = lambda xs: np.array([pdf(v, p) for v in xs])
            total = rule.integrate(f, 0.0, knee) + rule.integrate(f, knee, top)
            pdf_err = max(pdf_err, abs(total - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-5 and pdf_err <= 1e-10 and elapsed < 5
    line = report(11, "antiderivative calculus", ok,
                  f"worst derivative rel dev {worst:.2e}, worst pdf dev "
                  f"{pdf_err:.2e}, {elapsed:.1f}s")
    assert ok, line


def test_criterion_12_determinism(tmp_path):
    """A preset rerun with the same seed is byte-identical at 1/4/16 threads."""
    t0 = time.perf_counter()
    blobs = []
    for threads in (1, 4, 16):
        rows = run_bundle(figure_preset("fig4", seed=123), threads=threads)
        path = tmp_path / f"fig4-{threads}.csv"
        emit_csv(rows, path, zero_runtime=True)
        blobs.append(path.read_bytes())
    rows = run_bundle(figure_preset("fig4", seed=123), threads=4)
    path = tmp_path / "fig4-rerun.csv"
    emit_csv(rows, path, zero_runtime=True)
    blobs.append(path.read_bytes())
    elapsed = time.perf_counter() - t0
    ok = all(b == blobs[0] for b in blobs[1:])
    line = report(12, "determinism across threads", ok,
                  f"{len(blobs)} runs byte-identical: {ok}, {elapsed:.1f}s")
    assert ok, line
