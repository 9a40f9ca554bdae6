"""Cyclicity decisions: classifier, decay heuristic, certificates, necessity.

Routes with theorem-grade soundness for rational data report "cyclic" or
"not_cyclic"; the distance-decay estimator only ever reports "likely_*"
or "undetermined".  Evidence items carry the rule name, a plain-language
statement of the rule, and the numbers that fired it, so reports can be
audited and cross-checked between routes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from . import clark, config, exact, factor, poly, sigma
from .boundary import Arc, UnitCircleFunction, arc_union_contains, \
    arcs_cover_circle
from .errors import NormalizationError
from .hb import HbElement, HbSpace, element_from_rational, inner_product, \
    make_element

CYCLIC = "cyclic"
NOT_CYCLIC = "not_cyclic"
LIKELY_CYCLIC = "likely_cyclic"
LIKELY_NOT_CYCLIC = "likely_not_cyclic"
UNDETERMINED = "undetermined"

_THEOREM_GRADE = {CYCLIC, NOT_CYCLIC}


@dataclass
class Evidence:
    rule: str
    statement: str
    inputs: dict = field(default_factory=dict)
    numbers: dict = field(default_factory=dict)

    def to_dict(self):
        return {"rule": self.rule, "statement": self.statement,
                "inputs": self.inputs, "numbers": self.numbers}


@dataclass
class CyclicityReport:
    """Verdict plus the evidence items backing it."""

    verdict: str
    evidence: list = field(default_factory=list)
    decay: Optional["DecayTable"] = None

    def __post_init__(self):
        allowed = _THEOREM_GRADE | {LIKELY_CYCLIC, LIKELY_NOT_CYCLIC,
                                    UNDETERMINED}
        if self.verdict not in allowed:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def theorem_grade(self) -> bool:
        return self.verdict in _THEOREM_GRADE

    def to_dict(self):
        out = {"verdict": self.verdict,
               "evidence": [e.to_dict() for e in self.evidence]}
        if self.decay is not None:
            out["decay"] = self.decay.to_dict()
        return out

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        return json.dumps(self.to_dict(), **kwargs)


# ---------------------------------------------------------------------------
# finite-defect classifier

def defect_spectrum(space: HbSpace) -> list:
    """Unimodular zeros of a: the boundary points carrying the defect.

    For rational b these are exactly the circle points where every
    element of the space has a finite non-tangential limit and the
    classifier evaluates candidates.
    """
    out = []
    if poly.degree(space.A) >= 1:
        for r, _m in poly.roots_with_multiplicity(space.A):
            if abs(abs(r) - 1) <= config.PAIRING_RTOL:
                out.append(r / abs(r))
    out.sort(key=lambda z: float(np.angle(z)) % (2 * np.pi))
    return out


def classify_finite_defect(space: HbSpace, f) -> CyclicityReport:
    """Exact cyclicity classification for rational b and polynomial f.

    f is cyclic iff it is outer and does not vanish at any unimodular
    zero of a.
    """
    f = _as_poly(f)
    lambdas = defect_spectrum(space)
    if poly.degree(f) < 0:
        return CyclicityReport(NOT_CYCLIC, [Evidence(
            "finite_defect_classifier", "the zero function is never cyclic")])
    outer = factor.is_outer(f)
    values = {(_ang(lam)): float(abs(poly.horner(f, lam))) for lam in lambdas}
    small = [a for a, v in values.items() if v <= config.POINT_ZERO_TOL]
    verdict = CYCLIC if outer and not small else NOT_CYCLIC
    ev = [Evidence(
        "finite_defect_classifier",
        "cyclic iff outer and nonvanishing at every unimodular zero of a",
        inputs={"defect_points_angle": sorted(values)},
        numbers={"is_outer": outer, "abs_values": values,
                 "vanishing_points": small})]
    return CyclicityReport(verdict, ev)


def _as_poly(f) -> np.ndarray:
    if isinstance(f, HbElement):
        return f.f
    if isinstance(f, UnitCircleFunction):
        return f.to_polynomial()
    return poly.trim(np.asarray(f, dtype=complex))


def _ang(z) -> float:
    a = float(np.angle(z)) % (2 * np.pi)
    if a > 2 * np.pi - 1e-9:
        a = 0.0
    return round(a, 12)


# ---------------------------------------------------------------------------
# decay tables

@dataclass
class DecayThresholds:
    """Calibration constants for the decay heuristic (overridable)."""

    final_tol: float = 1e-3
    extrap_tol: float = 1e-4
    flat_window: int = 10
    flat_rtol: float = 1e-4
    flat_floor: float = 1e-2
    power_horizon: float = 1e6
    exp_horizon_factor: float = 4.0
    min_fit_points: int = 8
    min_r2: float = 0.98


@dataclass
class DecayTable:
    """d_N^2 = dist^2(1, span{f, zf, ..., z^{N-1} f}) in H(b)."""

    f: np.ndarray
    entries: list
    norm1_sq: float
    ridge_flags: list = field(default_factory=list)
    exact_entries: Optional[list] = None
    truncated: bool = False

    def d2(self) -> np.ndarray:
        return np.array([d for _n, d in self.entries])

    def sizes(self) -> np.ndarray:
        return np.array([n for n, _d in self.entries])

    def csv_rows(self):
        return [(int(n), float(d)) for n, d in self.entries]

    def to_dict(self):
        return {"entries": self.csv_rows(), "norm1_sq": self.norm1_sq,
                "ridge_flags": list(self.ridge_flags),
                "truncated": self.truncated}


def decay_table(space: HbSpace, f, n_max: int,
                use_exact: str | bool = False) -> DecayTable:
    """Distances from 1 to the polynomial-multiple spans of f.

    Through the embedding, d_N^2 = ||w||^2 - sum of |<w, q_i>|^2 over an
    orthonormal basis q_i of the span of the first N embedded multiples
    (QR orthonormalization of the stacked coefficient matrix).  Columns
    whose triangular pivot collapses are flagged as near-dependent.
    Normal equations on the raw Gram matrix square the conditioning and
    were observed to stall on kernel-type data, so they are used only in
    the exact rational backend, where conditioning is irrelevant and the
    two routes cross-validate.
    """
    f = _as_poly(f)
    if poly.degree(f) < 0:
        raise ValueError("decay table needs a nonzero f")
    if n_max > 256:
        raise ValueError("table size capped at 256")
    one = space.one()
    shift = np.array([0.0, 1.0], dtype=complex)
    els = []
    cur = f.copy()
    for _k in range(n_max):
        els.append(make_element(space, cur))
        cur = poly.pmul(cur, shift)
    deg = max(e.f.size for e in els)
    degm = max(max(e.mate.size for e in els), one.mate.size)
    M = np.zeros((deg + degm, n_max), dtype=complex)
    for k, e in enumerate(els):
        M[: e.f.size, k] = e.f
        M[deg: deg + e.mate.size, k] = e.mate
    w = np.zeros(deg + degm, dtype=complex)
    w[: one.f.size] = one.f
    w[deg: deg + one.mate.size] = one.mate
    Q, R = scipy.linalg.qr(M, mode="economic")
    col_scale = np.sqrt(np.sum(np.abs(M) ** 2, axis=0))
    flags = [n + 1 for n in range(n_max)
             if abs(R[n, n]) <= 1e-12 * max(1.0, float(col_scale[n]))]
    u = np.abs(Q.conj().T @ w) ** 2
    wn = float(np.sum(np.abs(w) ** 2))
    running = wn
    entries = []
    for n in range(1, n_max + 1):
        running -= float(u[n - 1])
        entries.append((n, max(running, 0.0)))
    table = DecayTable(f=f, entries=entries, norm1_sq=float(one.norm2),
                       ridge_flags=flags, truncated=False)
    if use_exact in ("auto", True) and space.exact is not None:
        # fraction elimination cost grows quickly with N; the automatic
        # mode stops at 32, an explicit request computes the full table
        cap = n_max if use_exact is True else min(n_max, 32)
        table.exact_entries = _exact_decay(space, els, one, cap)
        if table.exact_entries is None and use_exact is True:
            raise NormalizationError("exact decay requested but the data "
                                     "is not exactly representable")
    return table


def _exact_decay(space: HbSpace, els, one: HbElement, n_max: int):
    if one.exact_f is None or any(e.exact_f is None for e in els):
        return None
    n_cap = min(n_max, len(els))
    qs2 = exact.QC(space.exact.s2)
    def ip(e1, e2):
        return exact.qinner(e1.exact_f, e2.exact_f) + \
            exact.qinner(e1.exact_mate_scaled, e2.exact_mate_scaled) / qs2
    gram = [[ip(els[k], els[j]) for k in range(n_cap)] for j in range(n_cap)]
    rhs = [ip(one, els[j]) for j in range(n_cap)]
    norm1 = ip(one, one)
    out = []
    for n in range(1, n_cap + 1):
        coeffs = exact.solve_linear([row[:n] for row in gram[:n]], rhs[:n])
        acc = norm1
        for j in range(n):
            acc = acc - coeffs[j].conj() * rhs[j]
        if acc.im != 0:
            raise ArithmeticError("exact distance has nonzero imaginary part")
        out.append((n, acc.re))
    return out


def estimate_from_decay(table: DecayTable,
                        thresholds: DecayThresholds | None = None
                        ) -> CyclicityReport:
    """Heuristic verdict from the decay trend; never theorem-grade.

    likely_cyclic when the table reaches the final tolerance or a clean
    fitted power/exponential trend extrapolates below the target;
    likely_not_cyclic when the table has flattened well above zero.
    """
    th = thresholds or DecayThresholds()
    if len(table.entries) < 20:
        raise ValueError("estimator needs a table of length >= 20")
    d2 = table.d2()
    ns = table.sizes().astype(float)
    last = float(d2[-1])
    numbers = {"last_d2": last, "norm1_sq": table.norm1_sq}
    if last < th.final_tol:
        return CyclicityReport(LIKELY_CYCLIC, [Evidence(
            "decay_heuristic", "distance to constants fell below tolerance",
            numbers=numbers)], decay=table)
    w = th.flat_window
    window = d2[-w:]
    rel_change = float((window.max() - window.min()) / max(last, 1e-300))
    numbers["flat_rel_change"] = rel_change
    if rel_change < th.flat_rtol and last > th.flat_floor:
        return CyclicityReport(LIKELY_NOT_CYCLIC, [Evidence(
            "decay_heuristic",
            "distances stalled at a level far from zero",
            numbers=numbers)], decay=table)
    fit = _trend_fit(ns, d2, th)
    if fit is not None:
        numbers.update(fit)
        if fit["extrapolated_d2"] < th.extrap_tol and \
                fit["r_squared"] >= th.min_r2:
            return CyclicityReport(LIKELY_CYCLIC, [Evidence(
                "decay_heuristic",
                "fitted decay trend extrapolates below target",
                numbers=numbers)], decay=table)
    return CyclicityReport(UNDETERMINED, [Evidence(
        "decay_heuristic", "no decisive decay pattern", numbers=numbers)],
        decay=table)


def _trend_fit(ns, d2, th: DecayThresholds):
    half = max(th.min_fit_points, len(d2) // 2)
    xs = ns[-half:]
    ys = d2[-half:]
    mask = ys > 0
    if mask.sum() < th.min_fit_points:
        return None
    xs, ys = xs[mask], ys[mask]
    logy = np.log(ys)
    best = None
    for kind, tx, horizon in (
            ("power", np.log(xs), np.log(th.power_horizon)),
            ("exponential", xs, th.exp_horizon_factor * xs[-1])):
        A = np.vstack([tx, np.ones_like(tx)]).T
        sol, *_ = np.linalg.lstsq(A, logy, rcond=None)
        slope, intercept = float(sol[0]), float(sol[1])
        pred = A @ sol
        ss_res = float(np.sum((logy - pred) ** 2))
        ss_tot = float(np.sum((logy - logy.mean()) ** 2)) or 1e-300
        r2 = 1 - ss_res / ss_tot
        if slope >= 0:
            continue
        extrap = float(np.exp(intercept + slope * horizon))
        cand = {"fit_kind": kind, "slope": slope, "r_squared": r2,
                "extrapolated_d2": extrap}
        if best is None or cand["r_squared"] > best["r_squared"]:
            best = cand
    return best


# ---------------------------------------------------------------------------
# certificates

@dataclass
class TheoremACertificate:
    e_arcs: list
    f_arcs: list
    a_inverse_sq_integral: float
    f_essinf: float


@dataclass
class TheoremBCover:
    items: list  # [(Arc, eta)]


@dataclass
class CertificateOutcome:
    ok: bool
    rule: str
    report: CyclicityReport
    certificate: object = None
    reasons: list = field(default_factory=list)


def theorem_a_check(space: HbSpace, f, e_arcs: Sequence[Arc],
                    f_arcs: Sequence[Arc]) -> CertificateOutcome:
    """Certificate: 1/a square-summable on E, 1/f bounded on F, E u F = T.

    Sound for rational data through zero locations: a must have no
    unimodular zero in closure(E) and f none in closure(F); grid integrals
    are reported as diagnostics only.
    """
    f = _as_poly(f)
    e_arcs, f_arcs = list(e_arcs), list(f_arcs)
    reasons = []
    if not factor.is_outer(f):
        reasons.append("candidate is not outer")
    if not arcs_cover_circle(e_arcs + f_arcs):
        reasons.append("E and F do not cover the circle")
    a_zeros = defect_spectrum(space)
    f_zeros = sigma.sigma_upper(UnitCircleFunction.polynomial(f)) \
        if factor.is_outer(f) else []
    bad_a = [z for z in a_zeros
             if arc_union_contains(e_arcs, z, closed=True, tol=1e-12)]
    if bad_a:
        reasons.append(f"a vanishes inside closure(E) at angles "
                       f"{[_ang(z) for z in bad_a]}")
    bad_f = [z for z in f_zeros
             if arc_union_contains(f_arcs, z, closed=True, tol=1e-12)]
    if bad_f:
        reasons.append(f"f vanishes inside closure(F) at angles "
                       f"{[_ang(z) for z in bad_f]}")
    n = space.grid.n
    pts = config.unit_circle_points(n)
    avals = np.abs(space.a.boundary_values(n))
    fvals = np.abs(poly.horner(f, pts))
    e_mask = np.zeros(n, dtype=bool)
    for arc in e_arcs:
        e_mask |= arc.grid_mask(n)
    f_mask = np.zeros(n, dtype=bool)
    for arc in f_arcs:
        f_mask |= arc.grid_mask(n)
    with np.errstate(divide="ignore"):
        a_int = float(np.mean(np.where(e_mask, 1.0 / avals ** 2, 0.0))) \
            if e_mask.any() else 0.0
    f_inf = float(fvals[f_mask].min()) if f_mask.any() else float("inf")
    ok = not reasons
    cert = TheoremACertificate(e_arcs, f_arcs, a_int, f_inf) if ok else None
    ev = Evidence(
        "inverse_integrability_certificate",
        "outer candidate with 1/a in L^2 on E and 1/f bounded on F, "
        "E and F covering the circle",
        inputs={"E": [(a.start, a.end) for a in e_arcs],
                "F": [(a.start, a.end) for a in f_arcs]},
        numbers={"a_inverse_sq_integral_on_E": a_int,
                 "f_grid_min_on_F": f_inf, "reasons": reasons})
    verdict = CYCLIC if ok else UNDETERMINED
    return CertificateOutcome(ok, "A", CyclicityReport(verdict, [ev]),
                              cert, reasons)


def _require_normalized(space: HbSpace):
    """Base-point normalization: mu_1 absolutely continuous, phi unit norm."""
    cm = clark.clark_measure(space, 1.0)
    if cm.atoms:
        raise NormalizationError(
            "base Clark measure has atoms; renormalize b before using "
            "arc certificates")
    if abs(cm.ac_mass - 1.0) > 1e-6:
        raise NormalizationError(
            f"phi = a/(1-b) has norm^2 = {cm.ac_mass:.9g}, expected 1")
    return cm


def theorem_b_check(space: HbSpace, f, cover: TheoremBCover | Sequence
                    ) -> CertificateOutcome:
    """Certificate: |f| bounded below on arcs covering the non-exposure set.

    The covered set is the sound upper bound for sigma(phi); an empty
    cover certifies every outer candidate exactly when that bound is
    empty (then multiples of a are dense).
    """
    _require_normalized(space)
    f = _as_poly(f)
    items = cover.items if isinstance(cover, TheoremBCover) else list(cover)
    reasons = []
    if not factor.is_outer(f):
        reasons.append("candidate is not outer")
    upper = sigma.sigma_upper(sigma.phi_for_space(space))
    uncovered = [z for z in upper
                 if not any(arc.contains_point(z, closed=False)
                            for arc, _eta in items)]
    if uncovered:
        reasons.append(f"non-exposure bound points at angles "
                       f"{[_ang(z) for z in uncovered]} are not covered")
    n = space.grid.n
    pts = config.unit_circle_points(n)
    fvals = np.abs(poly.horner(_as_poly(f), pts))
    f_zeros = sigma.sigma_upper(UnitCircleFunction.polynomial(f)) \
        if factor.is_outer(f) else []
    bounds = []
    for arc, eta in items:
        if eta <= 0:
            reasons.append(f"arc at {arc.start:.6g} has nonpositive bound")
            continue
        inside = [z for z in f_zeros if arc.contains_point(z, closed=True)]
        if inside:
            reasons.append(
                f"f vanishes on the closed arc at angles "
                f"{[_ang(z) for z in inside]}")
            continue
        mask = arc.grid_mask(n)
        gmin = float(fvals[mask].min()) if mask.any() else float("inf")
        bounds.append((arc.start, arc.length, eta, gmin))
        if gmin <= eta:
            reasons.append(
                f"grid minimum {gmin:.6g} on the arc at {arc.start:.6g} "
                f"does not clear eta = {eta:.6g}")
    ok = not reasons
    ev = Evidence(
        "nonexposure_arc_cover_certificate",
        "outer candidate bounded below on open arcs covering every "
        "candidate non-exposure point",
        inputs={"cover": [(a.start, a.end, eta) for a, eta in items]},
        numbers={"upper_bound_angles": [_ang(z) for z in upper],
                 "arc_bounds": bounds, "reasons": reasons})
    verdict = CYCLIC if ok else UNDETERMINED
    return CertificateOutcome(ok, "B", CyclicityReport(verdict, [ev]),
                              TheoremBCover(list(items)) if ok else None,
                              reasons)


def theorem_c_check(space: HbSpace, g) -> tuple:
    """Certificate through the transform image f = Vg, F = f/inner factor.

    Succeeds when the unimodular zero sets of F and of phi are disjoint;
    part of the conclusion is F in H(b), asserted by embedding F through
    its mate.  Returns (F, outcome).
    """
    _require_normalized(space)
    g = _as_poly(g)
    f_image = clark.normalized_cauchy_rational(space, 1.0, g)
    theta, big_f = factor.inner_outer(f_image, space.grid)
    sigma_f = sigma.sigma_upper(big_f)
    sigma_phi = sigma.sigma_upper(sigma.phi_for_space(space))
    clash = [z for z in sigma_f
             if any(abs(z - w) <= 1e-6 for w in sigma_phi)]
    reasons = []
    if clash:
        reasons.append(
            f"image zero set meets the non-exposure bound at angles "
            f"{[_ang(z) for z in clash]}")
    member = None
    if not reasons:
        el = element_from_rational(space, big_f)
        member = float(el.norm2)
    ev = Evidence(
        "transform_image_certificate",
        "outer part of the transform image is cyclic when its circle "
        "zeros avoid every candidate non-exposure point",
        inputs={"g_degree": int(poly.degree(g))},
        numbers={"image_zero_angles": [_ang(z) for z in sigma_f],
                 "phi_zero_angles": [_ang(z) for z in sigma_phi],
                 "inner_factor_degree": len(theta.zeros),
                 "member_norm_sq": member, "reasons": reasons})
    ok = not reasons
    verdict = CYCLIC if ok else UNDETERMINED
    return big_f, CertificateOutcome(ok, "C", CyclicityReport(verdict, [ev]),
                                     big_f if ok else None, reasons)


# ---------------------------------------------------------------------------
# necessity

@dataclass
class NecessityOutcome:
    passed: bool
    report: CyclicityReport
    witness: Optional[tuple] = None


def necessity_check(space: HbSpace, f, alphas=None) -> NecessityOutcome:
    """Clark-atom necessity: a cyclic f cannot vanish at any atom.

    Sweeps the alpha grid; the first atom where |f| is below tolerance
    yields a theorem-grade not_cyclic with the witnessing (alpha, atom).
    Non-outer candidates fail outright.
    """
    f = _as_poly(f)
    if poly.degree(f) < 0 or not factor.is_outer(f):
        rep = CyclicityReport(NOT_CYCLIC, [Evidence(
            "outer_necessity", "cyclic vectors must be outer",
            numbers={"is_outer": False})])
        return NecessityOutcome(False, rep, None)
    if alphas is None:
        alphas = clark.alpha_sweep_values(space)
    measures = config.parallel_map(
        lambda a: clark.clark_measure(space, a), alphas)
    checked = 0
    for a, cm in zip(alphas, measures):
        for zeta, mass in cm.atoms:
            checked += 1
            val = float(abs(poly.horner(f, zeta)))
            if val < config.POINT_ZERO_TOL:
                rep = CyclicityReport(NOT_CYCLIC, [Evidence(
                    "singular_atom_necessity",
                    "a cyclic vector is nonzero at every atom of every "
                    "Clark measure",
                    inputs={"alpha_angle": _ang(a), "atom_angle": _ang(zeta)},
                    numbers={"abs_value": val, "atom_mass": mass})])
                return NecessityOutcome(False, rep, (complex(a),
                                                     complex(zeta)))
    rep = CyclicityReport(UNDETERMINED, [Evidence(
        "singular_atom_necessity",
        "no Clark atom in the sweep annihilates the candidate",
        numbers={"atoms_checked": checked,
                 "alphas_swept": len(list(alphas))})])
    return NecessityOutcome(True, rep, None)


# ---------------------------------------------------------------------------
# merged assessment

def assess(space: HbSpace, f, n_max: int = 32,
           thresholds: DecayThresholds | None = None) -> CyclicityReport:
    """Run classifier, necessity, and decay heuristics; merge the evidence.

    The theorem-grade classifier verdict wins; heuristic evidence is
    appended for cross-checking.
    """
    f = _as_poly(f)
    report = classify_finite_defect(space, f)
    evidence = list(report.evidence)
    nec = necessity_check(space, f)
    evidence.extend(nec.report.evidence)
    table = None
    if poly.degree(f) >= 0:
        table = decay_table(space, f, max(n_max, 20))
        est = estimate_from_decay(table, thresholds)
        evidence.extend(est.evidence)
        if report.verdict in _THEOREM_GRADE and est.verdict in (
                LIKELY_CYCLIC, LIKELY_NOT_CYCLIC):
            agree = (report.verdict == CYCLIC) == \
                (est.verdict == LIKELY_CYCLIC)
            evidence.append(Evidence(
                "route_agreement", "classifier and decay heuristic compared",
                numbers={"agree": bool(agree)}))
    if not nec.passed and report.verdict == CYCLIC:
        raise ArithmeticError(
            "necessity and classifier disagree; inconsistent space data")
    return CyclicityReport(report.verdict, evidence, decay=table)
