"""Graded singularity-resolving quadrature rules."""

import numpy as np
import pytest
from scipy.integrate import quad

from fraclap.quadrature import gauss_panel, graded_quadrature_rule


def _polar_square_oracle(rect, xs, alpha):
    """Integral of r^-alpha over a rectangle, singular point inside.

    Independent reduction: split into four corner triangles and integrate
    the exact radial profile rho(theta)^(2-alpha)/(2-alpha) over angle with
    an adaptive 1D rule.
    """
    a1, b1, a2, b2 = rect
    corners = [np.array([a1, a2]), np.array([b1, a2]),
               np.array([b1, b2]), np.array([a1, b2])]
    xs = np.asarray(xs, float)
    total = 0.0
    for i in range(4):
        A, B = corners[i], corners[(i + 1) % 4]
        d1, d2 = A - xs, B - xs
        th1, th2 = np.arctan2(d1[1], d1[0]), np.arctan2(d2[1], d2[0])
        if th2 <= th1:
            th2 += 2.0 * np.pi
        # line through A and B: rho(theta) = dist / cos(theta - theta_n)
        edge = B - A
        nrm = np.array([edge[1], -edge[0]])
        nrm = nrm / np.hypot(*nrm)
        dist = abs(np.dot(A - xs, nrm))
        th_n = np.arctan2(-nrm[1], -nrm[0]) if np.dot(nrm, A - xs) < 0 else np.arctan2(nrm[1], nrm[0])

        def profile(th):
            rho = dist / np.cos(th - th_n)
            return rho ** (2.0 - alpha) / (2.0 - alpha)

        val, err = quad(profile, th1, th2, limit=200)
        total += val
    return total


class TestGaussPanel:
    def test_polynomial_exactness(self):
        x, w = gauss_panel(0.0, 1.0, 8)
        # degree-15 polynomial integrated exactly by 8-point Gauss
        assert np.sum(w * x ** 15) == pytest.approx(1.0 / 16.0, rel=1e-14)

    def test_interval_mapping(self):
        x, w = gauss_panel(2.0, 5.0, 4)
        assert np.sum(w) == pytest.approx(3.0, rel=1e-14)
        assert x.min() > 2.0 and x.max() < 5.0


class TestGradedRule1D:
    def test_smooth_integrand(self):
        rule = graded_quadrature_rule((0.0, 1.0), 0.3)
        val = rule.integrate(lambda x: x ** 3)
        assert val == pytest.approx(0.25, rel=1e-13)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.9])
    def test_endpoint_singularity_closed_form(self, alpha):
        # integral of x^-alpha over (0, 1] equals 1/(1-alpha)
        rule = graded_quadrature_rule((0.0, 1.0), 0.0)
        val = rule.integrate_kernel(-alpha)
        assert val == pytest.approx(1.0 / (1.0 - alpha), rel=1e-12)

    @pytest.mark.parametrize("x0", [0.25, 0.5, 0.8])
    @pytest.mark.parametrize("alpha", [0.5, 0.95])
    def test_interior_singularity_closed_form(self, x0, alpha):
        rule = graded_quadrature_rule((0.0, 1.0), x0)
        expect = (x0 ** (1 - alpha) + (1 - x0) ** (1 - alpha)) / (1 - alpha)
        assert rule.integrate_kernel(-alpha) == pytest.approx(expect, rel=1e-11)

    def test_kernel_with_field_factor(self):
        # integral of x * x^-0.5 over (0,1] = 2/3 (field evaluated at nodes)
        rule = graded_quadrature_rule((0.0, 1.0), 0.0)
        val = rule.integrate_kernel(-0.5, lambda x: x)
        assert val == pytest.approx(2.0 / 3.0, rel=1e-10)

    def test_order_convergence(self):
        # error shrinks as the panel order doubles (down to a floor near
        # machine precision)
        x0, alpha = 0.5, 0.75
        expect = 2.0 * x0 ** (1 - alpha) / (1 - alpha)
        errs = []
        for order in (2, 4, 8):
            rule = graded_quadrature_rule((0.0, 1.0), x0, levels=6, gauss_order=order)
            errs.append(abs(rule.integrate_kernel(-alpha) - expect))
        assert errs[1] < 0.5 * errs[0] or errs[1] < 1e-12
        assert errs[2] < 0.5 * errs[1] or errs[2] < 1e-12

    def test_weights_positive_distances_match(self):
        rule = graded_quadrature_rule((0.0, 1.0), 0.4)
        assert np.all(rule.weights > 0.0)
        assert np.all(rule.dist > 0.0)
        np.testing.assert_allclose(np.abs(rule.nodes - 0.4), rule.dist,
                                   rtol=1e-7, atol=1e-16)

    def test_total_weight_is_measure(self):
        rule = graded_quadrature_rule((0.0, 2.0), 1.3)
        assert np.sum(rule.weights) == pytest.approx(2.0, rel=1e-12)

    def test_skip_core_excludes_innermost(self):
        rule = graded_quadrature_rule((0.0, 1.0), 0.5)
        full = rule.integrate_kernel(-0.5)
        outer = rule.integrate_kernel(-0.5, skip_core=True)
        assert outer < full


class TestGradedRule2D:
    def test_smooth_integrand(self):
        rule = graded_quadrature_rule((0.0, 1.0, 0.0, 1.0), [0.4, 0.55])
        val = rule.integrate(lambda p: p[:, 0] ** 2 * p[:, 1])
        assert val == pytest.approx(1.0 / 6.0, rel=1e-12)

    def test_total_weight_is_area(self):
        rule = graded_quadrature_rule((0.0, 2.0, 0.0, 1.5), [0.7, 0.9])
        assert np.sum(rule.weights) == pytest.approx(3.0, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    def test_singular_kernel_against_polar_oracle(self, alpha):
        rect = (0.0, 1.0, 0.0, 1.0)
        xs = [0.4, 0.55]
        rule = graded_quadrature_rule(rect, xs)
        expect = _polar_square_oracle(rect, xs, alpha)
        assert rule.integrate_kernel(-alpha) == pytest.approx(expect, rel=1e-9)

    def test_corner_singularity(self):
        rect = (0.0, 1.0, 0.0, 1.0)
        rule = graded_quadrature_rule(rect, [0.0, 0.0])
        expect = _polar_square_oracle(rect, [1e-14, 1e-14], 1.0)
        assert rule.integrate_kernel(-1.0) == pytest.approx(expect, rel=1e-7)


class TestValidation:
    def test_singular_point_outside(self):
        with pytest.raises(ValueError):
            graded_quadrature_rule((0.0, 1.0), 1.5)
        with pytest.raises(ValueError):
            graded_quadrature_rule((0.0, 1.0, 0.0, 1.0), [0.5, 2.0])

    def test_bad_ratio(self):
        with pytest.raises(ValueError):
            graded_quadrature_rule((0.0, 1.0), 0.5, ratio=1.5)

    def test_bad_levels(self):
        with pytest.raises(ValueError):
            graded_quadrature_rule((0.0, 1.0), 0.5, levels=0)
