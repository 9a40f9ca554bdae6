import numpy as np
import pytest

from hblab import clark, config, hb, poly
from hblab.boundary import UnitCircleFunction as UCF
from hblab.errors import DomainError


class TestClarkMeasure:
    def test_shifted_half_at_one(self, space_shifted_half):
        cm = clark.clark_measure(space_shifted_half, 1.0)
        assert len(cm.atoms) == 1
        zeta, mass = cm.atoms[0]
        assert abs(zeta - 1) < 1e-10
        assert abs(mass - 2 / 3) < 1e-8
        assert abs(cm.ac_mass - 1 / 3) < 1e-8
        assert abs(cm.total_mass - 1.0) < 1e-8
        # density |1/(2+z)|^2
        pts = config.unit_circle_points(64)
        want = 1.0 / np.abs(2 + pts) ** 2
        assert np.max(np.abs(cm.density_values(pts) - want)) < 1e-10

    def test_half_shift_at_one(self, space_half_shift):
        cm = clark.clark_measure(space_half_shift, 1.0)
        assert len(cm.atoms) == 1
        assert abs(cm.atoms[0][1] - 2.0) < 1e-8
        assert abs(cm.ac_mass - 1.0) < 1e-8
        assert abs(cm.total_mass - 3.0) < 1e-8
        pts = config.unit_circle_points(64)
        assert np.max(np.abs(cm.density_values(pts) - 1.0)) < 1e-10

    def test_small_shift_no_atoms(self, space_small_shift):
        cm = clark.clark_measure(space_small_shift, 1.0)
        assert cm.atoms == []
        assert abs(cm.total_mass - 1.0) < 1e-8
        assert cm.is_absolutely_continuous

    def test_no_atoms_at_random_alphas(self, space_small_shift):
        rng = np.random.default_rng(61)
        for _ in range(32):
            alpha = np.exp(2j * np.pi * rng.uniform())
            cm = clark.clark_measure(space_small_shift, alpha)
            assert cm.atoms == []

    def test_mass_conservation_random(self, all_test_spaces):
        rng = np.random.default_rng(67)
        alphas = np.exp(2j * np.pi * rng.uniform(size=16))
        for name, sp in all_test_spaces.items():
            for alpha in alphas:
                cm = clark.clark_measure(sp, alpha)
                rel = abs(cm.total_mass - cm.herglotz_mass) / \
                    max(1.0, abs(cm.herglotz_mass))
                assert rel < 1e-6, (name, alpha)

    def test_nonunimodular_alpha_rejected(self, space_small_shift):
        with pytest.raises(DomainError):
            clark.clark_measure(space_small_shift, 0.5)

    def test_csv_rows(self, space_shifted_half):
        cm = clark.clark_measure(space_shifted_half, 1.0)
        rows = cm.csv_rows(density_samples=8)
        assert len(rows) == 9
        kinds = {r[1] for r in rows}
        assert kinds == {"ac", "atom"}


class TestAlphaSweep:
    def test_includes_detected_alphas(self, space_from_one_minus_z):
        alphas = clark.alpha_sweep_values(space_from_one_minus_z)
        # the circle zero of a at 1 maps to b(1) = -1, which the sweep
        # must include even if the equispaced grid missed it
        assert any(abs(a + 1) < 1e-8 for a in alphas)

    def test_atom_at_minus_one(self, space_from_one_minus_z):
        cm = clark.clark_measure(space_from_one_minus_z, -1.0)
        assert len(cm.atoms) == 1
        zeta, mass = cm.atoms[0]
        assert abs(zeta - 1) < 1e-8
        assert abs(mass - 0.5) < 1e-6


class TestNormalizedCauchy:
    def test_constant_maps_to_one(self, all_test_spaces):
        zs = 0.7 * config.unit_circle_points(16)
        for sp in all_test_spaces.values():
            transform = clark.normalized_cauchy(sp, 1.0, [1.0])
            assert np.max(np.abs(transform(zs) - 1.0)) < 1e-10

    def test_kernel_identity(self, space_small_shift, space_shifted_half):
        rng = np.random.default_rng(71)
        zs = 0.9 * config.unit_circle_points(64)
        for sp in (space_small_shift, space_shifted_half):
            for _ in range(5):
                lam = 0.7 * np.sqrt(rng.uniform()) * np.exp(
                    2j * np.pi * rng.uniform())
                alpha = np.exp(2j * np.pi * rng.uniform())
                klam = UCF.rational([1.0], [1.0, -np.conj(lam)])
                transform = clark.normalized_cauchy(sp, alpha, klam)
                pref = 1 - alpha * np.conj(complex(sp.b(lam)))
                lhs = pref * transform(zs)
                rhs = hb.kernel(sp, lam)(zs)
                assert np.max(np.abs(lhs - rhs)) < 1e-6

    def test_unitarity_gram(self, space_small_shift, space_shifted_half):
        for sp in (space_small_shift, space_shifted_half):
            cm = clark.clark_measure(sp, 1.0)
            els = []
            for k in range(7):
                image = clark.normalized_cauchy_rational(
                    sp, 1.0, [0.0] * k + [1.0], measure=cm)
                els.append(hb.element_from_rational(sp, image))
            n = sp.grid.n
            pts = config.unit_circle_points(n)
            dens = cm.density_values(pts)
            for j in range(7):
                for k in range(7):
                    got = hb.inner_product(sp, els[j], els[k])
                    want = complex(np.mean(pts ** j * np.conj(pts) ** k *
                                           dens))
                    for zeta, mass in cm.atoms:
                        want += mass * zeta ** j * np.conj(zeta) ** k
                    assert abs(got - want) < 1e-6

    def test_kernel_norm_by_quadrature(self, space_small_shift):
        # third route for ||k_lam||^2: the L^2(mu_alpha) norm of the
        # preimage (1 - alpha conj(b(lam))) k_lam
        sp = space_small_shift
        lam = 0.37 + 0.21j
        cm = clark.clark_measure(sp, 1.0)
        pts = config.unit_circle_points(sp.grid.n)
        dens = cm.density_values(pts)
        pref = 1 - 1.0 * np.conj(complex(sp.b(lam)))
        vals = pref / (1 - np.conj(lam) * pts)
        quad = float(np.mean(np.abs(vals) ** 2 * dens))
        want = (1 - abs(complex(sp.b(lam))) ** 2) / (1 - abs(lam) ** 2)
        assert abs(quad - want) < 1e-8 * want

    def test_symbolic_matches_quadrature(self, space_small_shift):
        rng = np.random.default_rng(73)
        g = rng.normal(size=5) + 1j * rng.normal(size=5)
        fn = clark.normalized_cauchy_rational(space_small_shift, 1.0, g)
        transform = clark.normalized_cauchy(space_small_shift, 1.0, g)
        zs = 0.85 * config.unit_circle_points(32)
        assert np.max(np.abs(fn(zs) - transform(zs))) < 1e-8


class TestPoltoratski:
    def test_constant(self, space_shifted_half):
        val, err = clark.poltoratski_limit(space_shifted_half, 1.0, [1.0],
                                           1.0)
        assert abs(val - 1.0) < 1e-10

    def test_monomial(self, space_shifted_half):
        val, err = clark.poltoratski_limit(space_shifted_half, 1.0,
                                           [0.0, 1.0], 1.0)
        assert abs(val - 1.0) < 1e-3
        assert err < 1e-3

    def test_square(self, space_half_shift):
        val, _err = clark.poltoratski_limit(space_half_shift, 1.0,
                                            [0.0, 0.0, 1.0], 1.0)
        assert abs(val - 1.0) < 1e-3

    def test_non_atom_rejected(self, space_half_shift):
        with pytest.raises(DomainError):
            clark.poltoratski_limit(space_half_shift, 1.0, [1.0], -1.0)
