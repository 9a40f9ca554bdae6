"""Closed-form model spaces used as independent ground truth.

Two families with exactly known cyclicity behavior: Dirichlet spaces of
finitely supported boundary measures (norm computed from difference
quotients, no spectral factorization involved) and the half-shifted
inner-function spaces b = (1+theta)/2 whose singular support is the
level set theta = 1.  Both supply oracles that the classifier and the
Clark machinery must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import clark, config, cyclicity, exact, factor, poly
from .boundary import UnitCircleFunction
from .errors import DomainError
from .hb import HbSpace, kernel_element, element_from_rational


# ---------------------------------------------------------------------------
# Dirichlet spaces of finitely supported measures

@dataclass(frozen=True)
class DirichletSpec:
    """Finitely many boundary atoms (location, positive weight)."""

    atoms: tuple

    def __init__(self, atoms):
        pairs = []
        for zeta, w in atoms:
            zeta = complex(zeta)
            if abs(abs(zeta) - 1) > 1e-9:
                raise DomainError("Dirichlet atoms must lie on the circle")
            if w <= 0:
                raise ValueError("weights must be positive")
            pairs.append((zeta / abs(zeta), float(w)))
        for i, (z1, _w) in enumerate(pairs):
            for z2, _w2 in pairs[i + 1:]:
                if abs(z1 - z2) <= 1e-12:
                    raise ValueError("atom locations must be distinct")
        object.__setattr__(self, "atoms", tuple(pairs))


def dirichlet_integral(spec: DirichletSpec, f) -> float:
    """Sum over atoms of w * ||(f - f(zeta))/(z - zeta)||_2^2, exactly.

    The difference quotient of a polynomial is a polynomial; its
    coefficient l^2 norm is the local Dirichlet integral at the atom.
    """
    f = poly.trim(np.asarray(f, dtype=complex))
    total = 0.0
    for zeta, w in spec.atoms:
        shifted = f.copy()
        shifted[0] -= poly.horner(f, zeta)
        quot, rem = poly.synthetic_div(shifted, zeta)
        total += w * poly.l2sq(quot)
    return float(total)


def dirichlet_norm(spec: DirichletSpec, f) -> float:
    """Squared norm: generalized Dirichlet integral plus the H^2 norm."""
    f = poly.trim(np.asarray(f, dtype=complex))
    return dirichlet_integral(spec, f) + poly.l2sq(f)


def dirichlet_norm_exact(spec: DirichletSpec, f) -> Optional[Fraction]:
    """Exact rational norm when atoms and coefficients allow it."""
    try:
        fe = [exact.QC.from_complex(complex(c), 10**12)
              for c in np.atleast_1d(np.asarray(f, dtype=complex))]
        atoms = [(exact.QC.from_complex(z, 10**12), Fraction(w))
                 for z, w in spec.atoms]
    except (ValueError, TypeError):
        return None
    check = np.max(np.abs([a.to_complex() - z
                           for (a, _), (z, _) in zip(atoms, spec.atoms)]))
    if check > 1e-12:
        return None
    total = exact.ql2sq(fe)
    for zeta, w in atoms:
        fz = exact.qeval(fe, zeta)
        shifted = list(fe)
        shifted[0] = shifted[0] - fz
        quot = _qsynth_quotient(shifted, zeta)
        total = total + w * exact.ql2sq(quot)
    return total


def _qsynth_quotient(p, root):
    if len(p) <= 1:
        return []
    out = [exact.QZERO] * (len(p) - 1)
    acc = p[-1]
    for k in range(len(p) - 2, -1, -1):
        out[k] = acc
        acc = p[k] + acc * root
    return out


def dirichlet_cyclic(spec: DirichletSpec, f) -> cyclicity.CyclicityReport:
    """Cyclic in D(mu) iff outer and nonvanishing on the support of mu."""
    f = poly.trim(np.asarray(f, dtype=complex))
    if poly.degree(f) < 0:
        return cyclicity.CyclicityReport(cyclicity.NOT_CYCLIC, [
            cyclicity.Evidence("dirichlet_support_rule",
                               "the zero function is never cyclic")])
    outer = factor.is_outer(f)
    values = {round(float(np.angle(z)) % (2 * np.pi), 12):
              float(abs(poly.horner(f, z))) for z, _w in spec.atoms}
    small = [a for a, v in values.items() if v <= config.POINT_ZERO_TOL]
    verdict = cyclicity.CYCLIC if outer and not small else \
        cyclicity.NOT_CYCLIC
    return cyclicity.CyclicityReport(verdict, [cyclicity.Evidence(
        "dirichlet_support_rule",
        "cyclic iff outer and nonvanishing at every atom of the measure",
        numbers={"is_outer": outer, "abs_values": values,
                 "vanishing": small})])


# ---------------------------------------------------------------------------
# b = (1 + theta)/2 for finite Blaschke theta

@dataclass
class ThetaModel:
    """The space of b = (1+theta)/2 with its singular boundary measure.

    The measure sits at the unimodular solutions of theta = 1; the model
    subspace has dimension equal to the degree of theta, and masses are
    extracted by the same radial-limit method the Clark module uses.
    """

    theta: UnitCircleFunction
    b: UnitCircleFunction
    a: UnitCircleFunction
    atoms: list
    atom_errors: list
    herglotz_mass: float
    model_dimension: int


def theta_model(theta, grid: config.GridConfig = config.DEFAULT_GRID
                ) -> ThetaModel:
    """Build the half-shifted model for a nonconstant finite Blaschke theta."""
    if not isinstance(theta, UnitCircleFunction):
        theta = UnitCircleFunction.blaschke(list(theta))
    tn, td = theta.as_num_den()
    deg = max(poly.degree(tn), poly.degree(td))
    if deg < 1:
        raise ValueError("theta must be nonconstant")
    vals = np.abs(theta.boundary_values(grid.n))
    if float(np.max(np.abs(vals - 1.0))) > 1e-10:
        raise ValueError("theta must be inner (unimodular boundary values)")
    b = UnitCircleFunction.rational(poly.padd(td, tn), 2.0 * td) \
        if poly.degree(td) >= 1 else \
        UnitCircleFunction.polynomial(poly.padd(td, tn) / (2.0 * td[0]))
    a = UnitCircleFunction.rational(poly.psub(td, tn), 2.0 * td) \
        if poly.degree(td) >= 1 else \
        UnitCircleFunction.polynomial(poly.psub(td, tn) / (2.0 * td[0]))

    def h_fn(z):
        tv = complex(theta(z))
        return (1 + tv) / (1 - tv)

    atoms, errors = [], []
    level = poly.psub(tn, td)
    for r, _m in poly.roots_with_multiplicity(level):
        if abs(abs(r) - 1) > 1e-6:
            raise ArithmeticError(
                f"level-set root {r:.6g} strayed from the circle")
        zeta = r / abs(r)
        mass, err = clark.radial_atom_mass(h_fn, zeta, grid)
        if mass <= 0:
            raise ArithmeticError(f"nonpositive mass at {zeta:.6g}")
        atoms.append((zeta, mass))
        errors.append(err)
    hmass = float(np.real(h_fn(0.0)))
    total = sum(m for _z, m in atoms)
    if abs(total - hmass) > 1e-6 * max(1.0, abs(hmass)):
        raise ArithmeticError(
            f"masses sum to {total:.9g}, transform value {hmass:.9g}")
    return ThetaModel(theta=theta, b=b, a=a, atoms=atoms, atom_errors=errors,
                      herglotz_mass=hmass, model_dimension=deg)


def theta_cyclic(model: ThetaModel, f) -> cyclicity.CyclicityReport:
    """Cyclic iff outer and nonvanishing at every atom of the level measure."""
    f = poly.trim(np.asarray(f, dtype=complex))
    if poly.degree(f) < 0:
        return cyclicity.CyclicityReport(cyclicity.NOT_CYCLIC, [
            cyclicity.Evidence("inner_level_set_rule",
                               "the zero function is never cyclic")])
    outer = factor.is_outer(f)
    values = {round(float(np.angle(z)) % (2 * np.pi), 12):
              float(abs(poly.horner(f, z))) for z, _m in model.atoms}
    small = [a for a, v in values.items() if v <= config.POINT_ZERO_TOL]
    verdict = cyclicity.CYCLIC if outer and not small else \
        cyclicity.NOT_CYCLIC
    return cyclicity.CyclicityReport(verdict, [cyclicity.Evidence(
        "inner_level_set_rule",
        "cyclic iff outer and nonzero at every solution of theta = 1",
        numbers={"is_outer": outer, "abs_values": values,
                 "vanishing": small})])


# ---------------------------------------------------------------------------
# universal facts

def universal_cyclicity(space: HbSpace, n_kernels: int = 5,
                        seed: int = 20240801, decay_n: int = 48,
                        radius: float = 0.6) -> cyclicity.CyclicityReport:
    """Check the universal facts on a space: b itself and the kernels.

    b is cyclic exactly when it is outer (its mate prevents common circle
    zeros), and every reproducing kernel is cyclic; kernels are tested
    through decay tables of Taylor truncations and are expected to come
    back likely_cyclic.
    """
    if space.b.is_polynomial():
        b_poly = space.b.to_polynomial()
    else:
        b_poly = element_from_rational(space, space.b).f
    rep = cyclicity.classify_finite_defect(space, b_poly)
    b_outer = factor.is_outer(space.b)
    agree = (rep.verdict == cyclicity.CYCLIC) == b_outer
    evidence = list(rep.evidence)
    evidence.append(cyclicity.Evidence(
        "b_outer_equivalence",
        "b is cyclic exactly when it is outer",
        numbers={"is_outer": b_outer, "classifier_verdict": rep.verdict,
                 "agree": bool(agree)}))
    if not agree:
        raise ArithmeticError("classifier contradicts the outer test on b")
    rng = np.random.default_rng(seed)
    kernel_verdicts = []
    for _ in range(n_kernels):
        lam = radius * np.sqrt(rng.uniform()) * \
            np.exp(2j * np.pi * rng.uniform())
        el = kernel_element(space, lam)
        table = cyclicity.decay_table(space, el.f, decay_n)
        est = cyclicity.estimate_from_decay(table)
        kernel_verdicts.append((complex(lam), est.verdict))
    evidence.append(cyclicity.Evidence(
        "kernel_cyclicity",
        "reproducing kernels are cyclic; truncated kernels should decay",
        numbers={"verdicts": [(f"{lam:.6g}", v)
                              for lam, v in kernel_verdicts]}))
    return cyclicity.CyclicityReport(rep.verdict, evidence)
