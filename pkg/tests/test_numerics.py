"""Quadrature, special functions, eigensolver and sampler tests.

Reference values are frozen from independent oracles noted inline
(adaptive quadrature, series summation, hand-solved characteristic
polynomials); the eigensolver is additionally cross-checked against LAPACK.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nfedof.errors import ArgumentError
from nfedof.numerics import (EULER_GAMMA, QuadratureRule, SeededSampler,
                             cosine_integral, gauss_legendre,
                             hermitian_eigenvalues, hermitian_eigh, sici,
                             sine_integral, tensor_product)


class TestGaussLegendre:
    def test_order_one_is_midpoint(self):
        rule = gauss_legendre(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights.tolist() == [2.0]

    def test_order_two_quadratic(self):
        rule = gauss_legendre(2)
        assert rule.integrate(lambda x: x * x) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_exp_integral(self):
        # closed-form antiderivative: int_{-1}^{1} e^x dx = e - 1/e
        rule = gauss_legendre(16)
        assert rule.integrate(np.exp) == pytest.approx(np.e - 1.0 / np.e, abs=1e-12)

    @pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 16, 64, 257, 512])
    def test_invariants(self, order):
        rule = gauss_legendre(order)
        assert abs(rule.weights.sum() - 2.0) < 1e-12
        assert np.all(rule.weights > 0)
        assert np.all(np.diff(rule.nodes) > 0) or order == 1
        assert np.max(np.abs(rule.nodes + rule.nodes[::-1])) < 1e-12

    @given(st.integers(min_value=1, max_value=40))
    @settings(max_examples=25, deadline=None)
    def test_polynomial_exactness(self, order):
        # exact for degree 2*order-1; check the highest odd/even pair
        rule = gauss_legendre(order)
        deg = 2 * order - 1
        # odd power integrates to zero
        assert rule.integrate(lambda x: x ** deg) == pytest.approx(0.0, abs=1e-11)
        exact = 2.0 / deg  # integral of x^(deg-1) over [-1, 1], deg-1 even
        assert rule.integrate(lambda x: x ** (deg - 1)) == pytest.approx(exact, rel=1e-11)

    def test_tensor_product_separable(self):
        rx = gauss_legendre(6)
        ry = gauss_legendre(5)
        x, y, w = tensor_product(rx, ry, 0.0, 2.0, -1.0, 3.0)
        got = float(np.sum(w * x ** 3 * y ** 2))
        exact = (2.0 ** 4 / 4.0) * ((3.0 ** 3 - (-1.0) ** 3) / 3.0)
        assert got == pytest.approx(exact, rel=1e-12)

    @pytest.mark.parametrize("order", [0, -3, 513, 2.5])
    def test_order_validation(self, order):
        with pytest.raises(ArgumentError):
            gauss_legendre(order)

    def test_scaled_interval(self):
        rule = gauss_legendre(8)
        x, w = rule.scaled(1.0, 4.0)
        assert w.sum() == pytest.approx(3.0, abs=1e-13)
        assert x.min() > 1.0 and x.max() < 4.0


class TestSineCosineIntegrals:
    def test_si_zero(self):
        assert sine_integral(0.0) == 0.0

    def test_si_pi(self):
        # oracle: adaptive quadrature of sin(t)/t on [0, pi]
        assert sine_integral(np.pi) == pytest.approx(1.8519370519824662, abs=1e-10)

    def test_ci_one(self):
        # oracle: EULER_GAMMA + ln(x) + sum (-1)^k x^(2k) / (2k (2k)!)
        assert cosine_integral(1.0) == pytest.approx(0.3374039229009681, abs=1e-10)

    def test_ci_series_oracle_fresh(self):
        x = 2.3
        total = 0.0
        term_sign = -1.0
        fact = 1.0
        for k in range(1, 30):
            fact *= (2.0 * k - 1.0) * (2.0 * k)
            total += term_sign * x ** (2 * k) / (2 * k * fact)
            term_sign = -term_sign
        oracle = EULER_GAMMA + np.log(x) + total
        assert cosine_integral(x) == pytest.approx(oracle, abs=1e-12)

    def test_si_quadrature_oracle_fresh(self):
        # quadrature oracle independent of the series/continued-fraction path
        rule = gauss_legendre(60)
        for x in (0.5, 3.0, 7.5, 20.0):
            oracle = rule.integrate(lambda t: np.sinc(t / np.pi), 0.0, x)
            assert sine_integral(x) == pytest.approx(oracle, abs=1e-10)

    def test_accuracy_against_reference_grid(self):
        mpmath = pytest.importorskip("mpmath")
        xs = np.concatenate([np.geomspace(1e-6, 6.0, 40), np.linspace(6.0001, 100.0, 60)])
        si, ci = sici(xs)
        for x, s, c in zip(xs, si, ci):
            assert abs(s - float(mpmath.si(float(x)))) < 1e-10
            assert abs(c - float(mpmath.ci(float(x)))) < 1e-10

    @given(st.floats(min_value=1e-6, max_value=90.0))
    @settings(max_examples=60, deadline=None)
    def test_si_odd(self, x):
        assert sine_integral(-x) == pytest.approx(-sine_integral(x), abs=1e-12)

    def test_ci_domain(self):
        with pytest.raises(ArgumentError):
            cosine_integral(0.0)
        with pytest.raises(ArgumentError):
            cosine_integral(-1.0)

    def test_ci_tiny_argument(self):
        x = 1e-9
        assert cosine_integral(x) == pytest.approx(EULER_GAMMA + np.log(x), abs=1e-12)


class TestHermitianEigenvalues:
    def test_identity(self):
        assert hermitian_eigenvalues(np.eye(2)).tolist() == [1.0, 1.0]

    def test_diagonal(self):
        w = hermitian_eigenvalues(np.diag([2.0, 1.0]))
        assert w.tolist() == [2.0, 1.0]

    def test_two_by_two_complex(self):
        # characteristic polynomial lambda^2 - 4 lambda + 3 -> {3, 1}
        a = np.array([[2.0, 1j], [-1j, 2.0]])
        assert hermitian_eigenvalues(a) == pytest.approx([3.0, 1.0], abs=1e-12)

    def test_reconstruction_residual(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
        h = a + a.conj().T
        w, v = hermitian_eigh(h)
        res = np.linalg.norm(h - (v * w) @ v.conj().T) / np.linalg.norm(h)
        assert res < 1e-9

    def test_trace_and_frobenius_identities_psd(self):
        rng = np.random.default_rng(11)
        for n in (3, 17, 64):
            b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            a = b @ b.conj().T
            w = hermitian_eigenvalues(a)
            assert w.sum() == pytest.approx(np.trace(a).real, rel=1e-9)
            assert np.sum(w * w) == pytest.approx(np.linalg.norm(a) ** 2, rel=1e-9)

    def test_against_lapack(self):
        rng = np.random.default_rng(3)
        for n in (2, 5, 33):
            b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = b + b.conj().T
            w = hermitian_eigenvalues(h)
            ref = np.sort(np.linalg.eigvalsh(h))[::-1]
            assert np.max(np.abs(w - ref)) < 1e-10 * max(1.0, np.max(np.abs(ref)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ArgumentError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ArgumentError):
            hermitian_eigenvalues(np.zeros((2, 3)))


class TestSeededSampler:
    def test_bit_identical_streams(self):
        a = SeededSampler(123, 5).uniform(0.0, 1.0, 64)
        b = SeededSampler(123, 5).uniform(0.0, 1.0, 64)
        assert np.array_equal(a, b)

    def test_stream_independence_of_order(self):
        # drawing stream 9 after stream 2 must equal drawing it alone
        s = SeededSampler(9)
        _ = s.substream(2).uniform(0, 1, 16)
        later = s.substream(9).uniform(0, 1, 16)
        fresh = SeededSampler(9, 9).uniform(0, 1, 16)
        assert np.array_equal(later, fresh)

    def test_different_streams_differ(self):
        a = SeededSampler(1, 0).uniform(0, 1, 8)
        b = SeededSampler(1, 1).uniform(0, 1, 8)
        assert not np.array_equal(a, b)


class TestQuadratureRuleType:
    def test_fields(self):
        rule = gauss_legendre(4)
        assert isinstance(rule, QuadratureRule)
        assert rule.order == 4
        assert rule.nodes.shape == (4,)
