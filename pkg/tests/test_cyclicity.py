import numpy as np
import pytest

from hblab import cyclicity as cy, hb, poly
from hblab.boundary import Arc, UnitCircleFunction as UCF
from hblab.errors import NormalizationError


class TestClassifier:
    def test_worked_examples(self, space_half_shift):
        sp = space_half_shift
        assert cy.classify_finite_defect(sp, [1, 1]).verdict == cy.CYCLIC
        assert cy.classify_finite_defect(sp, [1, -1]).verdict == \
            cy.NOT_CYCLIC
        assert cy.classify_finite_defect(sp, [0, 1]).verdict == cy.NOT_CYCLIC

    def test_defect_spectrum(self, all_test_spaces):
        assert [abs(z - 1) < 1e-10 for z in
                cy.defect_spectrum(all_test_spaces["(1+z)/2"])] == [True]
        assert cy.defect_spectrum(all_test_spaces["z/2"]) == []

    def test_every_outer_cyclic_when_no_defect(self, space_small_shift):
        rng = np.random.default_rng(83)
        for _ in range(10):
            f = rng.normal(size=4) + 1j * rng.normal(size=4)
            want = cy.CYCLIC if __import__("hblab").is_outer(f) else \
                cy.NOT_CYCLIC
            assert cy.classify_finite_defect(space_small_shift, f).verdict \
                == want

    def test_report_serialization(self, space_half_shift):
        rep = cy.classify_finite_defect(space_half_shift, [1, 1])
        doc = rep.to_json()
        assert '"verdict": "cyclic"' in doc


class TestDecay:
    def test_flat_table(self, space_half_shift):
        table = cy.decay_table(space_half_shift, [1, -1], 24)
        assert np.max(np.abs(table.d2() - 2.0)) < 1e-9
        assert cy.estimate_from_decay(table).verdict == cy.LIKELY_NOT_CYCLIC

    def test_constant_candidate(self, space_half_shift):
        table = cy.decay_table(space_half_shift, [1.0], 20)
        assert table.d2()[0] < 1e-12
        assert cy.estimate_from_decay(table).verdict == cy.LIKELY_CYCLIC

    def test_closed_form_decay(self, space_half_shift):
        # for f = 1+z the distances are exactly 2/(2N+1)
        table = cy.decay_table(space_half_shift, [1, 1], 30,
                               use_exact="auto")
        for n, d in table.entries:
            assert abs(d - 2 / (2 * n + 1)) < 1e-10
        from fractions import Fraction
        for n, d in table.exact_entries:
            assert d == Fraction(2, 2 * n + 1)

    def test_monotone_bounded(self, space_half_shift):
        rng = np.random.default_rng(89)
        for _ in range(10):
            f = rng.normal(size=5) + 1j * rng.normal(size=5)
            table = cy.decay_table(space_half_shift, f, 24)
            d2 = table.d2()
            assert np.all(np.diff(d2) <= 1e-10)
            assert np.all(d2 <= table.norm1_sq + 1e-10)

    def test_short_table_rejected_by_estimator(self, space_half_shift):
        table = cy.decay_table(space_half_shift, [1, 1], 12)
        with pytest.raises(ValueError):
            cy.estimate_from_decay(table)

    def test_cap(self, space_half_shift):
        with pytest.raises(ValueError):
            cy.decay_table(space_half_shift, [1, 1], 300)

    def test_no_contradictions_random(self, space_half_shift):
        rng = np.random.default_rng(97)
        for _ in range(25):
            deg = int(rng.integers(1, 7))
            f = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            verdict = cy.classify_finite_defect(space_half_shift, f).verdict
            est = cy.estimate_from_decay(
                cy.decay_table(space_half_shift, f, 32)).verdict
            if verdict == cy.CYCLIC:
                assert est != cy.LIKELY_NOT_CYCLIC
            else:
                assert est != cy.LIKELY_CYCLIC


class TestCertificates:
    def test_rule_a_worked_example(self, space_half_shift):
        out = cy.theorem_a_check(
            space_half_shift, [1, 1],
            [Arc.from_angles(0.1, 2 * np.pi - 0.1)],
            [Arc.from_angles(-0.5, 0.5)])
        assert out.ok and out.report.verdict == cy.CYCLIC
        assert out.certificate.a_inverse_sq_integral > 0

    def test_rule_a_full_circle_fails(self, space_half_shift):
        out = cy.theorem_a_check(space_half_shift, [1, 1],
                                 [Arc.full_circle()],
                                 [Arc.from_angles(-0.5, 0.5)])
        assert not out.ok and any("closure(E)" in r for r in out.reasons)

    def test_rule_a_coverage_gap(self, space_half_shift):
        out = cy.theorem_a_check(space_half_shift, [1, 1],
                                 [Arc.from_angles(0.5, 2.0)],
                                 [Arc.from_angles(2.5, 3.0)])
        assert not out.ok

    def test_rule_a_constant_mate(self, space_small_shift):
        out = cy.theorem_a_check(space_small_shift, [1, 1],
                                 [Arc.full_circle()], [])
        assert out.ok

    def test_rule_a_agrees_with_classifier(self, space_half_shift):
        out = cy.theorem_a_check(
            space_half_shift, [1, 1],
            [Arc.from_angles(0.1, 2 * np.pi - 0.1)],
            [Arc.from_angles(-0.5, 0.5)])
        rep = cy.classify_finite_defect(space_half_shift, [1, 1])
        assert out.ok and rep.verdict == cy.CYCLIC

    def test_rule_b_worked_example(self, space_from_one_minus_z):
        out = cy.theorem_b_check(space_from_one_minus_z, [1, 1],
                                 [(Arc.from_angles(-0.2, 0.2), 0.5)])
        assert out.ok and out.report.verdict == cy.CYCLIC

    def test_rule_b_agrees_with_classifier(self, space_from_one_minus_z):
        sp = space_from_one_minus_z
        out = cy.theorem_b_check(sp, [1, 1],
                                 [(Arc.from_angles(-0.2, 0.2), 0.5)])
        rep = cy.classify_finite_defect(sp, [1, 1])
        assert out.ok and rep.verdict == cy.CYCLIC

    def test_rule_b_zero_on_arc(self, space_from_one_minus_z):
        out = cy.theorem_b_check(space_from_one_minus_z, [1, -1],
                                 [(Arc.from_angles(-0.2, 0.2), 0.5)])
        assert not out.ok

    def test_rule_b_empty_cover(self, space_small_shift):
        assert cy.theorem_b_check(space_small_shift, [1, 1], []).ok
        assert not cy.theorem_b_check(space_small_shift, [0, 1], []).ok

    def test_rule_b_requires_normalization(self, space_half_shift):
        with pytest.raises(NormalizationError):
            cy.theorem_b_check(space_half_shift, [1, 1], [])

    def test_rule_b_missing_cover(self, space_from_one_minus_z):
        out = cy.theorem_b_check(space_from_one_minus_z, [1, 1], [])
        assert not out.ok

    def test_rule_c_trivial(self, space_small_shift):
        big_f, out = cy.theorem_c_check(space_small_shift, [1.0])
        assert out.ok
        assert abs(complex(big_f(0.3)) - 1.0) < 1e-9

    def test_rule_c_truncated_kernel(self, space_from_one_minus_z):
        g = 0.5 ** np.arange(33)
        big_f, out = cy.theorem_c_check(space_from_one_minus_z, g)
        assert out.ok
        assert all(abs(z - 1) > 1e-3
                   for z in out.report.evidence[0].numbers
                   ["image_zero_angles"] or [10])

    def test_rule_c_engineered_failure(self, space_from_one_minus_z):
        sp = space_from_one_minus_z
        # one linear constraint makes the image vanish at 1
        from hblab import clark
        v1 = clark.normalized_cauchy_rational(sp, 1.0, [1.0])
        vz = clark.normalized_cauchy_rational(sp, 1.0, [0.0, 1.0])
        c0 = -complex(vz(0.999999)) / complex(v1(0.999999))
        # refine with the exact boundary value via small radii
        from hblab import poly as _p
        c0 = -complex(_p.horner(vz.num, 1.0) / _p.horner(vz.den, 1.0)) / \
            complex(_p.horner(v1.num, 1.0) / _p.horner(v1.den, 1.0))
        big_f, out = cy.theorem_c_check(sp, [c0, 1.0])
        assert not out.ok and out.reasons


class TestNecessity:
    def test_witness(self, space_shifted_half):
        out = cy.necessity_check(space_shifted_half, [1, -1])
        assert not out.passed
        alpha, zeta = out.witness
        assert abs(alpha - 1) < 1e-8 and abs(zeta - 1) < 1e-8
        assert out.report.verdict == cy.NOT_CYCLIC

    def test_pass(self, space_shifted_half):
        assert cy.necessity_check(space_shifted_half, [1, 1]).passed

    def test_no_atoms_passes_outer(self, space_small_shift):
        assert cy.necessity_check(space_small_shift, [1, -1]).passed

    def test_non_outer_fails(self, space_small_shift):
        out = cy.necessity_check(space_small_shift, [0, 1])
        assert not out.passed and out.report.verdict == cy.NOT_CYCLIC

    def test_necessity_blocks_other_routes(self, space_shifted_half):
        # when necessity says not cyclic, the classifier agrees
        out = cy.necessity_check(space_shifted_half, [1, -1])
        rep = cy.classify_finite_defect(space_shifted_half, [1, -1])
        assert not out.passed and rep.verdict == cy.NOT_CYCLIC


class TestAssess:
    def test_merged_report(self, space_half_shift):
        rep = cy.assess(space_half_shift, [1, 1], n_max=24)
        assert rep.verdict == cy.CYCLIC
        rules = {e.rule for e in rep.evidence}
        assert "finite_defect_classifier" in rules
        assert "decay_heuristic" in rules
        agree = [e for e in rep.evidence if e.rule == "route_agreement"]
        assert agree and agree[0].numbers["agree"]
