from fractions import Fraction

import numpy as np
import pytest

from hblab import clark, config, exact, hb, poly
from hblab.boundary import UnitCircleFunction as UCF
from hblab.errors import (DomainError, ExtremeFunctionError,
                          NormalizationError, SpaceMismatchError)


class TestMakeSpace:
    def test_half_shift_mate(self, space_half_shift):
        assert np.allclose(space_half_shift.a.to_polynomial(), [0.5, -0.5],
                           atol=1e-12)

    def test_small_shift_mate(self, space_small_shift):
        assert np.allclose(space_small_shift.a.to_polynomial(),
                           [np.sqrt(3) / 2])

    def test_extreme_rejected(self):
        with pytest.raises(ExtremeFunctionError):
            hb.make_space(UCF.blaschke([0.5]))
        with pytest.raises(ExtremeFunctionError):
            hb.make_space(UCF.polynomial([0.0, 1.0]))

    def test_exact_backend_certified(self, all_test_spaces):
        for name, sp in all_test_spaces.items():
            assert sp.exact is not None, name
            assert sp.pythagorean_exact_residual() == [], name

    def test_exact_scale_folds_when_square(self, space_half_shift):
        assert space_half_shift.exact.s2 == 1
        assert list(space_half_shift.exact.A) == \
            [exact.QC(Fraction(1, 2)), exact.QC(Fraction(-1, 2))]

    def test_exact_scaled_form(self, space_small_shift):
        assert space_small_shift.exact.s2 == Fraction(3, 4)

    def test_exact_flag_off(self):
        sp = hb.make_space(UCF.polynomial([0.0, 0.5]), use_exact=False)
        assert sp.exact is None

    def test_from_phi_round_trip(self, space_from_one_minus_z):
        sp = space_from_one_minus_z
        assert abs(complex(sp.b(0))) < 1e-12
        # b = -z/(2 - z)
        assert abs(complex(sp.b(0.5)) - (-0.5 / 1.5)) < 1e-10

    def test_from_phi_requires_unit_norm(self):
        with pytest.raises(NormalizationError):
            hb.make_space_from_phi(UCF.polynomial([1.0, -1.0]))


class TestMate:
    def test_spec_values(self, space_half_shift, space_small_shift):
        assert np.allclose(hb.mate(space_half_shift, [1.0]), [-1.0])
        assert np.allclose(hb.mate(space_small_shift, [1.0]), [0.0])
        assert np.allclose(hb.mate(space_small_shift, [0.0, 1.0]),
                           [-1 / np.sqrt(3)])

    def test_monomial_mates(self, space_half_shift):
        # mate(z^k) has coefficients -2 below index k and -1 at k
        for k in range(1, 9):
            f = [0.0] * k + [1.0]
            m = hb.mate(space_half_shift, f)
            want = np.array([-2.0] * k + [-1.0])
            assert np.allclose(m, want, atol=1e-12)

    def test_zero_element(self, space_half_shift):
        el = hb.make_element(space_half_shift, [0.0])
        assert el.norm2 == 0.0 and np.allclose(el.mate, [0.0])

    def test_residuals_random(self, all_test_spaces):
        rng = np.random.default_rng(41)
        for sp in all_test_spaces.values():
            for _ in range(50):
                deg = int(rng.integers(0, 17))
                f = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
                f1 = hb.mate(sp, f)  # raises if the residual is large
                lhs = hb_residual(sp, f, f1)
                assert lhs < 1e-10 * max(1.0, float(np.max(np.abs(f))))

    def test_exact_residual_random(self, space_half_shift):
        rng = np.random.default_rng(43)
        for _ in range(50):
            deg = int(rng.integers(0, 17))
            coeffs = rng.integers(-9, 10, size=deg + 1).astype(float) / 4
            el = hb.make_element(space_half_shift, coeffs)
            if poly.degree(el.f) < 0:
                continue
            assert el.exact_f is not None
            resid = exact.mate_residual(
                list(space_half_shift.exact.p), list(space_half_shift.exact.A),
                list(el.exact_f), list(el.exact_mate_scaled))
            assert resid == []

    def test_contractive_in_hardy(self, all_test_spaces):
        rng = np.random.default_rng(47)
        for sp in all_test_spaces.values():
            for _ in range(20):
                f = rng.normal(size=7) + 1j * rng.normal(size=7)
                el = hb.make_element(sp, f)
                assert el.norm2 >= poly.l2sq(f) - 1e-12


def hb_residual(sp, f, f1) -> float:
    f = poly.aspoly(f)
    f1 = poly.aspoly(f1)
    out = 0.0
    for m in range(max(f.size, f1.size)):
        acc = 0j
        for j in range(sp.p.size):
            if m + j < f.size:
                acc += np.conj(sp.p[j]) * f[m + j]
        for j in range(sp.A.size):
            if m + j < f1.size:
                acc += np.conj(sp.A[j]) * f1[m + j]
        out = max(out, abs(acc))
    return out


class TestInnerProduct:
    def test_norm_one(self, space_half_shift):
        one = hb.make_element(space_half_shift, [1.0])
        assert hb.inner_product(space_half_shift, one, one) == \
            pytest.approx(2.0)

    def test_orthogonality(self, space_half_shift):
        one = hb.make_element(space_half_shift, [1.0])
        for k in range(9):
            g = poly.pmul([1.0, -1.0], [0.0] * k + [1.0])
            el = hb.make_element(space_half_shift, g)
            assert abs(hb.inner_product(space_half_shift, one, el)) < 1e-12

    def test_monomial_norms(self, space_half_shift):
        for k in range(9):
            el = hb.make_element(space_half_shift, [0.0] * k + [1.0])
            assert el.norm2 == pytest.approx(4 * k + 2)
            assert el.norm2_exact == 4 * k + 2

    def test_space_mismatch(self, space_half_shift, space_small_shift):
        e1 = hb.make_element(space_half_shift, [1.0])
        e2 = hb.make_element(space_small_shift, [1.0])
        with pytest.raises(SpaceMismatchError):
            hb.inner_product(space_half_shift, e1, e2)

    def test_exact_inner(self, space_small_shift):
        ez = hb.make_element(space_small_shift, [0.0, 1.0])
        val = hb.inner_product_exact(space_small_shift, ez, ez)
        assert val.re == Fraction(4, 3) and val.im == 0

    def test_cross_representation_small_shift(self, space_small_shift):
        # <Vh, Vg>_b computed by mates vs <h, g> in L^2(mu_1) by transform
        sp = space_small_shift
        cm = clark.clark_measure(sp, 1.0)
        images = []
        for k in range(4):
            fn = clark.normalized_cauchy_rational(sp, 1.0, [0.0] * k + [1.0],
                                                  measure=cm)
            images.append(hb.element_from_rational(sp, fn))
        n = sp.grid.n
        pts = config.unit_circle_points(n)
        dens = cm.density_values(pts)
        for j in range(4):
            for k in range(4):
                got = hb.inner_product(sp, images[j], images[k])
                want = complex(np.mean(pts ** j * np.conj(pts) ** k * dens))
                assert abs(got - want) < 1e-6 * max(1.0, abs(want))


class TestKernels:
    def test_at_zero_small_shift(self, space_small_shift):
        k = hb.kernel(space_small_shift, 0.0)
        zs = 0.9 * config.unit_circle_points(16)
        assert np.max(np.abs(k(zs) - 1.0)) < 1e-12

    def test_norm_identity(self, all_test_spaces):
        rng = np.random.default_rng(53)
        for sp in all_test_spaces.values():
            for _ in range(5):
                lam = 0.85 * np.sqrt(rng.uniform()) * np.exp(
                    2j * np.pi * rng.uniform())
                el = hb.kernel_element(sp, lam)
                lhs = hb.inner_product(sp, el, el).real
                rhs = (1 - abs(complex(sp.b(lam))) ** 2) / \
                    (1 - abs(lam) ** 2)
                assert abs(lhs - rhs) <= 1e-8 * abs(rhs)

    def test_reproducing_property(self, space_half_shift):
        rng = np.random.default_rng(59)
        sp = space_half_shift
        for _ in range(10):
            f = rng.normal(size=9) + 1j * rng.normal(size=9)
            lam = 0.6 * np.sqrt(rng.uniform()) * np.exp(
                2j * np.pi * rng.uniform())
            el = hb.make_element(sp, f)
            kel = hb.kernel_element(sp, lam)
            got = hb.inner_product(sp, el, kel)
            want = complex(poly.horner(poly.aspoly(f), lam))
            assert abs(got - want) < 1e-8 * max(1.0, abs(want))

    def test_kernel_truncation_bound(self):
        n = hb.kernel_taylor_degree(0.6, 1e-12)
        assert 0.6 ** n / 0.4 < 1e-12

    def test_outside_disk_rejected(self, space_half_shift):
        with pytest.raises(DomainError):
            hb.kernel(space_half_shift, 1.0)

    def test_boundary_kernel(self, space_half_shift):
        k = hb.boundary_kernel(space_half_shift, 1.0)
        assert np.allclose(k.to_polynomial(), [0.5])
        kel = hb.make_element(space_half_shift, k.to_polynomial())
        for coeffs in ([1.0], [0.0, 1.0], [0.0, 0.0, 1.0]):
            el = hb.make_element(space_half_shift, coeffs)
            got = hb.inner_product(space_half_shift, el, kel)
            want = complex(poly.horner(poly.aspoly(coeffs), 1.0))
            assert abs(got - want) < 1e-12

    def test_boundary_kernel_needs_unimodular_b(self, space_small_shift):
        with pytest.raises(DomainError):
            hb.boundary_kernel(space_small_shift, 1.0)


class TestDivideInner:
    def test_monomial(self, space_small_shift):
        el = hb.make_element(space_small_shift, [0.0, 1.0, 1.0])
        out = hb.divide_inner(space_small_shift, el)
        assert np.allclose(out.f, [1.0, 1.0])
        assert np.isfinite(out.norm2)

    def test_half_shift_z(self, space_half_shift):
        el = hb.make_element(space_half_shift, [0.0, 1.0])
        out = hb.divide_inner(space_half_shift, el)
        assert np.allclose(out.f, [1.0])
        assert out.norm2 == pytest.approx(2.0)

    def test_outer_unchanged(self, space_half_shift):
        el = hb.make_element(space_half_shift, [1.0, 1.0])
        assert hb.divide_inner(space_half_shift, el) is el


class TestRationalElements:
    def test_truncation_matches_series(self, space_small_shift):
        fn = UCF.rational([1.0], [1.0, -0.4])
        el = hb.element_from_rational(space_small_shift, fn)
        want = 0.4 ** np.arange(el.f.size)
        assert np.max(np.abs(el.f - want)) < 1e-12

    def test_interior_pole_rejected(self, space_small_shift):
        fn = UCF.rational([1.0], [1.0, -1.0], boundary_singular=True)
        with pytest.raises(DomainError):
            hb.element_from_rational(space_small_shift, fn)
