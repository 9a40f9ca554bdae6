"""Bounds for the local non-exposure set of an outer function.

For rational data the set sigma(phi) of circle points where some
pseudocontinuable quotient fails to extend analytically is bracketed
between the Clark-atom sweep (lower bound: the singular supports embed
into sigma) and the unimodular zero set of phi (upper bound: away from
zeros 1/phi is square-summable on an arc, which excludes the arc).
Finite Toeplitz sections of the unimodular symbol conj(phi)/phi give a
trend estimate of the kernel dimension, exactly zero iff phi^2 is an
exposed point of the unit ball of H^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import clark, config, factor, poly
from .boundary import UnitCircleFunction, cancel_common_roots
from .errors import DomainError, MembershipError
from .hb import HbSpace

phi_alpha = clark.phi_alpha


def phi_for_space(space: HbSpace) -> UnitCircleFunction:
    """The base outer function a/(1-b) of the space."""
    return clark.phi_alpha(space, 1.0)


@dataclass
class SigmaBounds:
    """Certified bracket lower <= sigma(phi) <= upper (finite point sets)."""

    lower: list
    upper: list
    provenance: dict = field(default_factory=dict)
    base_measure_absolutely_continuous: bool = True

    def consistent(self, tol: float = 1e-8) -> bool:
        return all(any(abs(p - u) <= tol for u in self.upper)
                   for p in self.lower)


def sigma_upper(phi: UnitCircleFunction) -> list:
    """Unimodular zeros of the numerator of an outer rational function.

    On any closed arc avoiding these points 1/phi is bounded, hence
    square-summable, so no non-exposure point lies there.
    """
    if not factor.is_outer(phi):
        raise ValueError("upper bound requires an outer function")
    num = phi.num if isinstance(phi, UnitCircleFunction) else poly.aspoly(phi)
    out = []
    if poly.degree(num) >= 1:
        for r, _m in poly.roots_with_multiplicity(num):
            if abs(abs(r) - 1) <= config.ATOM_LOCATION_TOL:
                out.append(r / abs(r))
    return _dedupe(out)


def sigma_lower(space: HbSpace, alphas=None) -> SigmaBounds:
    """Clark-atom sweep: every singular support point lies in sigma(phi).

    Returns a SigmaBounds with only the lower set filled; provenance maps
    each point to the witnessing alpha.  The flag records whether the
    base measure (alpha = 1) is absolutely continuous.
    """
    if alphas is None:
        alphas = clark.alpha_sweep_values(space)
    measures = config.parallel_map(
        lambda a: clark.clark_measure(space, a), alphas)
    points = []
    prov = {}
    base_ac = True
    for a, cm in zip(alphas, measures):
        if abs(a - 1.0) <= 1e-12 and cm.atoms:
            base_ac = False
        for zeta, mass in cm.atoms:
            key = _find(points, zeta)
            if key is None:
                points.append(zeta)
                prov[_angle_key(zeta)] = {
                    "alpha_angle": float(np.angle(a)) % (2 * np.pi),
                    "mass": mass}
    return SigmaBounds(lower=_dedupe(points), upper=[], provenance=prov,
                       base_measure_absolutely_continuous=base_ac)


def sigma_bounds(space: HbSpace, alphas=None) -> SigmaBounds:
    """Both bounds for the space's base outer function."""
    low = sigma_lower(space, alphas)
    up = sigma_upper(phi_for_space(space))
    low.upper = up
    low.provenance.update({"upper_source": "unimodular numerator zeros"})
    return low


def _dedupe(points, tol: float = 1e-8):
    out = []
    for p in sorted(points, key=lambda t: float(np.angle(t)) % (2 * np.pi)):
        if not any(abs(p - q) <= tol for q in out):
            out.append(complex(p))
    return out


def _find(points, z, tol: float = 1e-8):
    for p in points:
        if abs(p - z) <= tol:
            return p
    return None


def _angle_key(z) -> float:
    return round(float(np.angle(z)) % (2 * np.pi), 10)


# ---------------------------------------------------------------------------
# Toeplitz finite sections

@dataclass
class ToeplitzSectionReport:
    """Singular value data of finite sections of T_{conj(phi)/phi}."""

    sizes: list
    singular_values: dict
    threshold: float
    near_kernel_counts: dict
    smallest: dict
    stable: bool
    estimated_kernel_dim: int | None

    def csv_rows(self):
        rows = []
        for n in self.sizes:
            for k, s in enumerate(self.singular_values[n]):
                rows.append((n, k, float(s)))
        return rows


def unimodular_symbol(phi: UnitCircleFunction):
    """(num, den) of conj(phi)/phi on the circle, circle zeros cancelled.

    The reversed-conjugate numerator shares every circle zero of the
    numerator of phi, so the quotient extends smoothly across them.
    """
    n, d = phi.as_num_den()
    dn, dd = poly.degree(n), poly.degree(d)
    unum = poly.pmul(poly.reverse_conj(n), d)
    uden = poly.pmul(n, poly.reverse_conj(d))
    k = dd - dn
    if k >= 0:
        unum = poly.pmul(unum, _mono(k))
    else:
        uden = poly.pmul(uden, _mono(-k))
    return cancel_common_roots(unum, uden, tol=1e-7)


def _mono(k: int) -> np.ndarray:
    out = np.zeros(k + 1, dtype=complex)
    out[k] = 1.0
    return out


def toeplitz_kernel_sections(phi: UnitCircleFunction, n_section: int,
                             grid: config.GridConfig = config.DEFAULT_GRID,
                             threshold: float = config.SV_KERNEL_THRESHOLD,
                             doublings: int = 2) -> ToeplitzSectionReport:
    """Finite-section near-kernel trend for the symbol conj(phi)/phi.

    Builds the n x n section with entry (m, k) equal to the symbol's
    Fourier coefficient of index k - m, for n_section and its doublings,
    and counts singular values below the threshold.  The count is a
    trend diagnostic, not a proof of the kernel dimension.
    """
    if not factor.is_outer(phi):
        raise ValueError("sections require an outer symbol root")
    if n_section < 1 or (n_section & (n_section - 1)) != 0 or \
            n_section > 4096:
        raise ValueError("section size must be a power of two <= 4096")
    unum, uden = unimodular_symbol(phi)
    if poly.degree(uden) >= 1:
        for r, _m in poly.roots_with_multiplicity(uden):
            if abs(abs(r) - 1) <= 1e-9:
                raise DomainError("symbol has a genuine circle pole")
    n = grid.n
    while n < 8 * n_section:
        n *= 2
    pts = config.unit_circle_points(n)
    vals = poly.horner(unum, pts) / poly.horner(uden, pts)
    coeffs = np.fft.fft(vals) / n
    sizes = [n_section * (2 ** j) for j in range(doublings + 1)]

    def section_svals(m: int):
        col = coeffs[(-np.arange(m)) % n]
        row = coeffs[np.arange(m) % n]
        return np.linalg.svd(scipy.linalg.toeplitz(col, row),
                             compute_uv=False)

    svs, counts, smallest = {}, {}, {}
    for m, s in zip(sizes, config.parallel_map(section_svals, sizes)):
        svs[m] = s
        counts[m] = int(np.sum(s < threshold))
        smallest[m] = float(s[-1])
    stable = len(set(counts.values())) == 1
    return ToeplitzSectionReport(
        sizes=sizes, singular_values=svs, threshold=threshold,
        near_kernel_counts=counts, smallest=smallest, stable=stable,
        estimated_kernel_dim=counts[sizes[0]] if stable else None)


# ---------------------------------------------------------------------------
# pseudocontinuation on J_phi witnesses

def _product_samples(phi: UnitCircleFunction, h, n: int,
                     conjugate_phi: bool = False) -> np.ndarray:
    """Samples of phi*h (or conj(phi)*h) with rational cancellation."""
    pts = config.unit_circle_points(n)
    if isinstance(h, UnitCircleFunction):
        if conjugate_phi:
            from .boundary import boundary_conjugate
            cn, cd = boundary_conjugate(phi)
            num = poly.pmul(cn, h.num)
            den = poly.pmul(cd, h.den)
        else:
            num = poly.pmul(phi.num, h.num)
            den = poly.pmul(phi.den, h.den)
        num, den = cancel_common_roots(num, den, tol=1e-7)
        nv = poly.horner(num, pts)
        dv = poly.horner(den, pts)
        return nv / dv
    h_vals = np.asarray(h, dtype=complex)
    if h_vals.shape != pts.shape:
        raise ValueError("sample vector must match the grid size")
    pv = phi.boundary_values(n)
    return (np.conj(pv) if conjugate_phi else pv) * h_vals


def jphi_membership_residuals(phi: UnitCircleFunction, h,
                              grid: config.GridConfig = config.DEFAULT_GRID):
    """Two-sided membership residuals (r_minus, r_plus).

    r_minus = ||P_-(phi h)||_2 tests phi*h analytic; r_plus =
    ||P_+(conj(phi) h)||_2 tests conj(phi)*h anti-analytic with zero
    mean.  Both must vanish for h to be a pseudocontinuable quotient.
    """
    n = grid.n
    u = _product_samples(phi, h, n, conjugate_phi=False)
    v = _product_samples(phi, h, n, conjugate_phi=True)
    cu = np.fft.fft(u) / n
    cv = np.fft.fft(v) / n
    r_minus = float(np.sqrt(np.sum(np.abs(cu[n // 2:]) ** 2)))
    r_plus = float(np.sqrt(np.sum(np.abs(cv[: n // 2]) ** 2)))
    return r_minus, r_plus


def pseudocontinuation_eval(phi: UnitCircleFunction, h, z: complex,
                            grid: config.GridConfig = config.DEFAULT_GRID,
                            check_membership: bool = True) -> complex:
    """Two-sided analytic extension of a pseudocontinuable quotient.

    Interior points use the Poisson integral of phi*h divided by phi(z);
    exterior points use the conjugate-phi form at the reflected point.
    The Poisson integrals are evaluated through Fourier coefficients of
    the sampled products, so accuracy is uniform up to the circle.
    """
    z = complex(z)
    if abs(abs(z) - 1) <= 1e-12:
        raise DomainError("extension is defined off the circle only")
    if check_membership:
        r_minus, r_plus = jphi_membership_residuals(phi, h, grid)
        scale = max(1.0, _sample_scale(phi, h, grid.n))
        if max(r_minus, r_plus) > config.MEMBERSHIP_TOL * scale:
            raise MembershipError(
                f"two-sided membership residuals ({r_minus:.3e}, "
                f"{r_plus:.3e}) exceed tolerance")
    n = grid.n
    if abs(z) < 1:
        u = _product_samples(phi, h, n, conjugate_phi=False)
        val = _poisson_from_samples(u, z)
        pz = complex(phi(z))
        if abs(pz) < 1e-13:
            raise DomainError("phi vanishes at the evaluation point")
        return val / pz
    w = 1 / np.conj(z)
    v = _product_samples(phi, h, n, conjugate_phi=True)
    val = _poisson_from_samples(v, w)
    pw = np.conj(complex(phi(w)))
    if abs(pw) < 1e-13:
        raise DomainError("conj(phi) vanishes at the reflected point")
    return val / pw


def _sample_scale(phi, h, n) -> float:
    u = _product_samples(phi, h, n, conjugate_phi=False)
    u = u[np.isfinite(u)]
    return float(np.sqrt(np.mean(np.abs(u) ** 2))) if u.size else 1.0


def _poisson_from_samples(values: np.ndarray, z: complex) -> complex:
    """Harmonic extension at |z| < 1 from equispaced boundary samples."""
    n = values.size
    coeffs = np.fft.fft(values) / n
    ks = np.arange(1, n // 2)
    plus = np.sum(coeffs[ks] * z ** ks)
    minus = np.sum(coeffs[n - ks] * np.conj(z) ** ks)
    return complex(coeffs[0] + plus + minus)
