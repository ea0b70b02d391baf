import numpy as np
import pytest

from nfedof.errors import SingularityError
from nfedof.geometry import WaveParams
from nfedof.greens import dyadic_green, eta_matrix, scalar_green

WAVE = WaveParams.from_wavelength(1.0)


class TestScalarGreen:
    def test_full_wavelength_separation(self):
        g = scalar_green([0, 0, 1.0], [0, 0, 0], WAVE)
        assert g == pytest.approx(1.0 / (4 * np.pi), abs=1e-14)

    def test_half_wavelength_separation(self):
        g = scalar_green([0, 0, 0.5], [0, 0, 0], WAVE)
        assert g == pytest.approx(-1.0 / (2 * np.pi), abs=1e-14)

    def test_ten_wavelengths(self):
        g = scalar_green([0, 0, 10.0], [0, 0, 0], WAVE)
        assert g == pytest.approx((1.0 / (40 * np.pi)) * np.exp(-1j * 20 * np.pi), abs=1e-14)

    def test_magnitude_law(self):
        d = 3.7
        g = scalar_green([0, d, 0], [0, 0, 0], WAVE)
        assert abs(g) == pytest.approx(1.0 / (4 * np.pi * d), rel=1e-13)

    def test_reciprocity_exact(self):
        r, s = [0.3, -0.2, 5.0], [-1.0, 0.4, 0.0]
        assert scalar_green(r, s, WAVE) == scalar_green(s, r, WAVE)

    def test_singularity_guard(self):
        with pytest.raises(SingularityError):
            scalar_green([0, 0, 0.005], [0, 0, 0], WAVE)


class TestDyadicGreen:
    def test_far_field_transverse_limit(self):
        # along +z with k0*d huge the coefficient matrix tends to diag(1,1,0)
        sample = dyadic_green([0, 0, 1e5], [0, 0, 0], WAVE)
        g = scalar_green([0, 0, 1e5], [0, 0, 0], WAVE)
        expected = np.diag([1.0, 1.0, 0.0]) * g
        assert np.max(np.abs(sample.matrix - expected)) < 1e-4 * abs(g)

    def test_axis_aligned_off_diagonal_zero(self):
        sample = dyadic_green([0, 0, 7.0], [0, 0, 0], WAVE)
        assert sample.entry("x", "y") == 0.0
        assert sample.entry("x", "z") == 0.0

    def test_zz_coefficient_at_kd_one(self):
        # a = (0,0,1), k0*d = 1: eta(z,z) = 1 - 1 + (j - 3j) + (3 - 1) = 2 - 2j
        eta = eta_matrix(np.array([0.0, 0.0, 1.0]), 1.0)
        assert eta[2, 2] == pytest.approx(2.0 - 2.0j, abs=1e-14)

    def test_trace_identity(self):
        # sum_p eta(p,p) = 2 exactly for any direction and distance
        rng = np.random.default_rng(5)
        for _ in range(25):
            a = rng.normal(size=3)
            a /= np.linalg.norm(a)
            kd = rng.uniform(0.1, 1e4)
            assert np.trace(eta_matrix(a, kd)) == pytest.approx(2.0, abs=1e-12)

    def test_symmetry_pq_qp(self):
        sample = dyadic_green([0.5, -1.2, 8.0], [0.1, 0.3, 0.0], WAVE)
        m = sample.matrix
        assert np.max(np.abs(m - m.T)) < 1e-12 * np.max(np.abs(m))

    def test_far_field_projector(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            a = rng.normal(size=3)
            a /= np.linalg.norm(a)
            eta = eta_matrix(a, 1e4)
            proj = np.eye(3) - np.outer(a, a)
            assert np.linalg.norm(eta - proj) <= 1e-3

    def test_unit_direction_recorded(self):
        sample = dyadic_green([3.0, 4.0, 12.0], [0, 0, 0], WAVE)
        assert np.linalg.norm(sample.direction) == pytest.approx(1.0, abs=1e-12)
        assert sample.distance == pytest.approx(13.0)

    def test_matches_operator_finite_difference(self):
        """Entries agree with (I + grad grad^H / k0^2) applied numerically.

        The closed coefficient form pairs the +j-convention operator
        expansion with the -j propagation kernel (the two appear as a
        conjugate pair; every squared-magnitude output is unaffected), so
        the finite-difference reference is built on exp(+j*k0*d)/(4*pi*d)
        and conjugated.
        """
        wave = WaveParams.from_wavelength(1.0)
        k0 = wave.wavenumber
        s = np.zeros(3)
        r = np.array([0.8, -0.4, 3.0])
        h = 1e-4

        def g_plus(point):
            d = np.linalg.norm(point - s)
            return np.exp(1j * k0 * d) / (4 * np.pi * d)

        hess = np.zeros((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                e_i = np.eye(3)[i] * h
                e_j = np.eye(3)[j] * h
                hess[i, j] = (g_plus(r + e_i + e_j) - g_plus(r + e_i - e_j)
                              - g_plus(r - e_i + e_j) + g_plus(r - e_i - e_j)) / (4 * h * h)
        eta_numeric = (np.eye(3) * g_plus(r) + hess / k0 ** 2) / g_plus(r)
        sample = dyadic_green(r, s, wave)
        eta_actual = sample.matrix / scalar_green(r, s, wave)
        assert np.max(np.abs(eta_actual - eta_numeric)) < 1e-4
