import numpy as np
import pytest

from hblab import config, poly
from hblab.boundary import UnitCircleFunction as UCF
from hblab.errors import ExtremeFunctionError, FactorizationError
from hblab.factor import fejer_riesz, inner_outer, is_outer, mate_of_b


class TestFejerRiesz:
    def test_half_shift_weight(self):
        a = fejer_riesz([-0.25, 0.5, -0.25])
        assert np.allclose(a, [0.5, -0.5], atol=1e-12)

    def test_constant(self):
        a = fejer_riesz([0.75])
        assert np.allclose(a, [np.sqrt(3) / 2])
        assert np.allclose(fejer_riesz([1.0]), [1.0])

    def test_no_interior_roots_and_positive_at_zero(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            p = rng.normal(size=4) + 1j * rng.normal(size=4)
            p = 0.3 * p / np.max(np.abs(p))
            w = -np.convolve(p, np.conj(p)[::-1])
            w[len(p) - 1] += 1.0  # 1 - |p|^2 >= 0
            a = fejer_riesz(w)
            assert a[0].real > 0 and abs(a[0].imag) < 1e-12
            if poly.degree(a) >= 1:
                for r, _m in poly.roots_with_multiplicity(a):
                    assert abs(r) >= 1 - 1e-10
            pts = config.unit_circle_points(512)
            wv = sum(w[k + len(p) - 1] * pts ** k
                     for k in range(-(len(p) - 1), len(p)))
            assert np.max(np.abs(np.abs(poly.horner(a, pts)) ** 2 -
                                 wv.real)) < 1e-10

    def test_negative_weight_rejected(self):
        with pytest.raises(FactorizationError):
            fejer_riesz([0.0, -1.0, 0.0])

    def test_non_hermitian_rejected(self):
        with pytest.raises(FactorizationError):
            fejer_riesz([0.5, 1.0, 0.2])


class TestMate:
    def test_half_shift(self):
        a = mate_of_b(UCF.polynomial([0.5, 0.5]))
        assert np.allclose(a.to_polynomial(), [0.5, -0.5], atol=1e-12)

    def test_shifted_half(self):
        a = mate_of_b(UCF.polynomial([0.0, 0.5, 0.5]))
        assert np.allclose(a.to_polynomial(), [0.5, -0.5], atol=1e-12)

    def test_small_shift(self):
        a = mate_of_b(UCF.polynomial([0.0, 0.5]))
        assert np.allclose(a.to_polynomial(), [np.sqrt(3) / 2])

    def test_rational_b(self):
        b = UCF.rational([0.0, -1.0], [2.0, -1.0])  # -z/(2-z)
        a = mate_of_b(b)
        n = 4096
        resid = np.abs(a.boundary_values(n)) ** 2 + \
            np.abs(b.boundary_values(n)) ** 2 - 1
        assert np.max(np.abs(resid)) < 1e-10
        assert complex(a(0)).real > 0

    def test_pythagorean_for_all(self, all_test_spaces):
        for name, sp in all_test_spaces.items():
            assert sp.pythagorean_residual() < 1e-10, name

    def test_extreme_rejected(self):
        with pytest.raises(ExtremeFunctionError):
            mate_of_b(UCF.polynomial([0.0, 1.0]))  # b = z, inner

    def test_sup_bound_enforced(self):
        with pytest.raises(ValueError):
            mate_of_b(UCF.polynomial([0.0, 1.1]))

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            mate_of_b(UCF.polynomial([0.5]))


class TestIsOuter:
    def test_circle_zero_is_outer(self):
        assert is_outer(np.array([1.0, 1.0]))

    def test_monomial_is_not(self):
        assert not is_outer(np.array([0.0, 1.0]))

    def test_exterior_zeros_are_outer(self):
        assert is_outer(np.convolve([1.0, -1.0], [2.0, 1.0]))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            is_outer(np.array([0.0]))


class TestInnerOuter:
    def test_monomial_factor(self):
        theta, outer = inner_outer(np.array([0.0, 1.0, 1.0]))
        assert theta.zeros == [0j]
        assert np.allclose(outer.to_polynomial(), [1.0, 1.0])

    def test_already_outer(self):
        theta, outer = inner_outer(np.array([1.0, 1.0]))
        assert theta.zeros == [] and abs(theta.phase - 1) < 1e-12
        assert np.allclose(outer.to_polynomial(), [1.0, 1.0])

    def test_interior_zero_reflected(self):
        f = poly.pmul([-0.5, 1.0], [1.0, -1.0])  # (z-1/2)(1-z)
        theta, outer = inner_outer(f)
        assert len(theta.zeros) == 1 and abs(theta.zeros[0] - 0.5) < 1e-10
        pts = config.unit_circle_points(1024)
        fv = poly.horner(poly.aspoly(f), pts)
        assert np.max(np.abs(np.abs(outer.boundary_values(1024)) -
                             np.abs(fv))) < 1e-9
        assert complex(outer(0)).real > 0

    def test_random_factorizations(self):
        rng = np.random.default_rng(31)
        pts = config.unit_circle_points(1024)
        for _ in range(15):
            f = rng.normal(size=6) + 1j * rng.normal(size=6)
            theta, outer = inner_outer(f)
            tv = theta.boundary_values(1024)
            assert np.max(np.abs(np.abs(tv) - 1)) < 1e-10
            fv = poly.horner(poly.aspoly(f), pts)
            ov = outer.boundary_values(1024)
            assert np.max(np.abs(fv - tv * ov)) < 1e-9 * max(
                1.0, float(np.max(np.abs(fv))))
            assert is_outer(outer.num)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            inner_outer(np.array([0.0]))
