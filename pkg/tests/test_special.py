"""Gamma evaluation, kernel normalization constants, and radial calculus."""

import math

import numpy as np
import pytest

from fraclap.special import (ConstantMode, FractionalOrder, KernelSpec,
                             gamma_ln, gamma_value, h_constant,
                             radial_laplacian, riesz_constant)
from fraclap.errors import DegenerateExponent, GammaPole


class TestGamma:
    def test_positive_arguments_match_stdlib(self):
        # math.gamma uses an independent implementation (platform tgamma).
        for x in [0.25, 0.5, 1.0, 1.5, 2.0, 3.75, 7.5, 12.0, 30.5, 0.001]:
            assert gamma_value(x) == pytest.approx(math.gamma(x), rel=1e-12)

    def test_log_gamma_matches_stdlib(self):
        for x in [0.1, 0.5, 1.0, 2.5, 10.0, 50.0, 170.0]:
            assert gamma_ln(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)

    def test_negative_non_integer_arguments(self):
        for x in [-0.5, -1.5, -2.25, -6.75]:
            assert gamma_value(x) == pytest.approx(math.gamma(x), rel=1e-11)

    def test_recurrence_identity(self):
        rng = np.random.default_rng(7)
        xs = rng.uniform(0.05, 20.0, size=200)
        g1 = np.array([gamma_value(x + 1.0) for x in xs])
        g0 = np.array([gamma_value(x) for x in xs])
        assert np.max(np.abs(g1 / (xs * g0) - 1.0)) < 1e-12

    def test_reflection_consistency(self):
        # gamma(x) * gamma(1-x) = pi / sin(pi x)
        for x in [0.1, 0.3, 0.77]:
            lhs = gamma_value(x) * gamma_value(1.0 - x)
            assert lhs == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-12)

    def test_poles_rejected(self):
        for x in [0.0, -1.0, -2.0, -7.0, 1e-9, -3.0 + 1e-9]:
            with pytest.raises(GammaPole):
                gamma_value(x)


class TestRieszConstant:
    # Oracle: c(d, sigma) = gamma((d - sigma)/2) / (pi^p * 2^sigma * gamma(sigma/2))
    # with p = sigma/2 in "paper" mode and p = d/2 in "standard" mode,
    # evaluated with math.gamma (independent of the Lanczos path under test).
    def _oracle(self, d, sigma, mode):
        p = sigma / 2.0 if mode == ConstantMode.PAPER else d / 2.0
        return math.gamma((d - sigma) / 2.0) / (
            math.pi ** p * 2.0 ** sigma * math.gamma(sigma / 2.0))

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("sigma", [0.25, 0.5, 0.75, 1.5, 1.9])
    @pytest.mark.parametrize("mode", [ConstantMode.PAPER, ConstantMode.STANDARD])
    def test_matches_gamma_oracle(self, d, sigma, mode):
        if d == 1 and abs(sigma - 1.0) < 1e-12:
            return
        assert riesz_constant(d, sigma, mode) == pytest.approx(
            self._oracle(d, sigma, mode), rel=1e-12)

    def test_mode_ratio(self):
        # standard/paper differ only by pi^((sigma - d)/2)
        for d, sigma in [(1, 0.5), (2, 0.75), (3, 1.5)]:
            ratio = (riesz_constant(d, sigma, ConstantMode.STANDARD)
                     / riesz_constant(d, sigma, ConstantMode.PAPER))
            assert ratio == pytest.approx(math.pi ** ((sigma - d) / 2.0), rel=1e-13)

    def test_pole_at_d1_sigma1(self):
        with pytest.raises(GammaPole):
            riesz_constant(1, 1.0, ConstantMode.PAPER)

    def test_mode_parse(self):
        assert ConstantMode.parse("paper") is ConstantMode.PAPER
        assert ConstantMode.parse("STANDARD") is ConstantMode.STANDARD
        with pytest.raises(ValueError):
            ConstantMode.parse("bogus")


class TestHConstant:
    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("s", [0.3, 0.5, 1.2, 1.7])
    def test_reciprocal_identity(self, d, s):
        # 1/h = c(d, 2-s) * (d - 2 + s) * s ties the hypersingular prefactor
        # to the potential normalization.
        if d == 1 and s < 1.0:
            return  # d - 2 + s < 0: identity holds with signed gamma, below
        h = h_constant(d, s, ConstantMode.PAPER)
        c = riesz_constant(d, 2.0 - s, ConstantMode.PAPER)
        assert 1.0 / h == pytest.approx(c * (d - 2.0 + s) * s, rel=1e-13)

    def test_signed_branch(self):
        # d=1, s=0.5: exponent d-2+s is negative, constants stay consistent.
        h = h_constant(1, 0.5, ConstantMode.PAPER)
        c = riesz_constant(1, 1.5, ConstantMode.PAPER)
        assert 1.0 / h == pytest.approx(c * (-0.5) * 0.5, rel=1e-13)

    def test_degenerate_exponent(self):
        with pytest.raises(DegenerateExponent):
            h_constant(1, 1.0, ConstantMode.PAPER)


class TestFractionalOrder:
    def test_bounds(self):
        assert FractionalOrder(0.5).sigma == pytest.approx(1.5)
        for bad in [0.0, 2.0, -0.5, 2.5]:
            with pytest.raises(ValueError):
                FractionalOrder(bad)

    def test_pole_check(self):
        with pytest.raises(GammaPole):
            FractionalOrder(1.0).check_pole(1)
        FractionalOrder(1.0).check_pole(2)  # fine in 2D


class TestRadialLaplacian:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_quadratic(self, d):
        # radial part of Laplacian applied to r^2 gives 2d in d dimensions
        for r in np.linspace(0.2, 3.0, 15):
            out = radial_laplacian(lambda rr: rr ** 2, r, d)
            assert abs(out - 2.0 * d) < 1e-5

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("s", [0.25, 0.6, 0.9, 1.1, 1.5, 1.85])
    def test_power_kernel_identity(self, d, s):
        # analytic derivatives: Laplacian of r^-(d-2+s) is (d-2+s)*s*r^-(d+s)
        beta = d - 2.0 + s
        for r in np.geomspace(0.05, 5.0, 20):
            lhs = radial_laplacian(
                lambda rr: rr ** (-beta), r, d,
                df=lambda rr: -beta * rr ** (-beta - 1.0),
                d2f=lambda rr: beta * (beta + 1.0) * rr ** (-beta - 2.0))
            rhs = beta * s * r ** (-(d + s))
            assert abs(lhs - rhs) <= 1e-6 * abs(rhs)


class TestKernelSpec:
    def test_make(self):
        spec = KernelSpec.make(1, 0.5, ConstantMode.PAPER)
        assert spec.d == 1
        assert spec.exponent == pytest.approx(0.5)  # d - sigma
        assert spec.constant == pytest.approx(
            riesz_constant(1, 0.5, ConstantMode.PAPER))
