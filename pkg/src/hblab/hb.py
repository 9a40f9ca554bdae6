"""Construction of H(b) for rational non-extreme b.

Membership and norms go through the isometric embedding f -> (f, f1)
where the mate f1 is the unique H^2 solution of the Toeplitz relation
built from conj(b) and conj(a); for rational b = p/q the relation is
multiplied through by conj(q), which reduces everything to banded
polynomial convolutions and keeps exact rational arithmetic available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import config, exact, factor, poly
from .boundary import (UnitCircleFunction, analytic_projection,
                       modulus_sq_rational)
from .errors import (DomainError, ExtremeFunctionError, FactorizationError,
                     NormalizationError, SpaceMismatchError)

_RATIONALIZE_DEN = 10**9


@dataclass(frozen=True)
class ExactSpaceData:
    """Certified exact data: b = p/q and the scaled mate a = s*A/q.

    s2 = s^2 is rational; the certificate is the coefficient identity
    s2*|A|^2 + |p|^2 = |q|^2 on the circle, checked in exact arithmetic.
    """

    p: tuple
    q: tuple
    A: tuple
    s2: Fraction

    @property
    def scale_is_rational(self) -> bool:
        return self.s2 == 1


class HbSpace:
    """A validated non-extreme space: b, its mate a, and working precision."""

    def __init__(self, b: UnitCircleFunction, a: UnitCircleFunction,
                 A: np.ndarray, grid: config.GridConfig,
                 exact_data: Optional[ExactSpaceData]):
        self.b = b
        self.a = a
        self.grid = grid
        self.exact = exact_data
        self.p = b.num.copy()
        self.q = b.den.copy()
        self.A = poly.trim(np.asarray(A, dtype=complex))
        self._one: Optional[HbElement] = None

    def __repr__(self):
        tag = "exact" if self.exact else "float"
        return f"HbSpace(b={self.b!r}, backend={tag})"

    @property
    def is_polynomial_b(self) -> bool:
        return self.b.is_polynomial()

    def one(self) -> "HbElement":
        if self._one is None:
            self._one = make_element(self, [1.0])
        return self._one

    def pythagorean_residual(self) -> float:
        """max over the grid of | |a|^2 + |b|^2 - 1 |."""
        n = self.grid.n
        av = np.abs(self.a.boundary_values(n)) ** 2
        bv = np.abs(self.b.boundary_values(n)) ** 2
        return float(np.max(np.abs(av + bv - 1.0)))

    def pythagorean_exact_residual(self):
        """Exact Laurent residual of s2|A|^2 + |p|^2 - |q|^2 (None if float)."""
        if self.exact is None:
            return None
        lhs = exact.laurent_add(
            [exact.QC(self.exact.s2) * c
             for c in exact.modulus_sq_coeffs(self.exact.A)],
            exact.modulus_sq_coeffs(self.exact.p))
        rhs = exact.modulus_sq_coeffs(self.exact.q)
        neg = [-c for c in rhs]
        resid = exact.laurent_add(lhs, neg)
        return [c for c in resid if not c.is_zero()]


@dataclass
class HbElement:
    """A function f in H(b) with its mate and cached norm data."""

    space: HbSpace
    f: np.ndarray
    mate: np.ndarray
    exact_f: Optional[tuple] = None
    exact_mate_scaled: Optional[tuple] = None
    _norm2: float = field(init=False, default=0.0)

    def __post_init__(self):
        self._norm2 = poly.l2sq(self.f) + poly.l2sq(self.mate)

    @property
    def norm2(self) -> float:
        return self._norm2

    @property
    def norm2_exact(self) -> Optional[Fraction]:
        if self.exact_f is None or self.space.exact is None:
            return None
        return exact.ql2sq(self.exact_f) + \
            exact.ql2sq(self.exact_mate_scaled) / self.space.exact.s2

    def __call__(self, z):
        return poly.horner(self.f, z)


# ---------------------------------------------------------------------------
# construction

def _try_exact(b: UnitCircleFunction, A_float: np.ndarray
               ) -> Optional[ExactSpaceData]:
    """Rationalize (p, q, A) and certify the Pythagorean identity exactly."""
    try:
        p = _rationalize(b.num)
        q = _rationalize(b.den)
        # normalize A by its largest coefficient before rationalizing so a
        # common irrational scale s drops out; s2 is then solved exactly
        j0 = int(np.argmax(np.abs(A_float)))
        t = A_float / A_float[j0]
        A = _rationalize(t)
    except ValueError:
        return None
    denom = exact.ql2sq(A)
    if denom == 0:
        return None
    s2 = (exact.ql2sq(q) - exact.ql2sq(p)) / denom
    if s2 <= 0:
        return None
    root = exact.frac_sqrt(s2)
    if root is not None:
        A = [exact.QC(root) * c for c in A]
        s2 = Fraction(1)
    if exact.pythagorean_residual(p, A, s2):
        return None
    a0 = A[0]
    if a0.im != 0 or a0.re <= 0:
        return None
    return ExactSpaceData(p=tuple(p), q=tuple(q), A=tuple(A), s2=s2)


def _rationalize(coeffs, max_den: int = _RATIONALIZE_DEN):
    out = []
    for c in np.atleast_1d(coeffs):
        c = complex(c)
        if not np.isfinite(c.real) or not np.isfinite(c.imag):
            raise ValueError("non-finite coefficient")
        out.append(exact.QC.from_complex(c, max_den))
    while out and out[-1].is_zero():
        out.pop()
    return out


def make_space(b, grid: config.GridConfig = config.DEFAULT_GRID,
               use_exact: str | bool = "auto") -> HbSpace:
    """Validate b and construct H(b) with its Pythagorean mate.

    use_exact: "auto" certifies an exact rational backend when the data
    allows it, True insists on one, False skips the attempt.
    """
    if not isinstance(b, UnitCircleFunction):
        b = UnitCircleFunction.polynomial(b)
    if b.kind == "blaschke":
        raise ExtremeFunctionError(
            "finite Blaschke products are extreme; H(b) has no mate")
    a = factor.mate_of_b(b, grid)
    w = factor._laurent_center_sub(factor.modulus_sq_laurent(b.den),
                                   factor.modulus_sq_laurent(b.num))
    A = factor.fejer_riesz(w, grid)
    exact_data = None
    if use_exact in ("auto", True):
        exact_data = _try_exact(b, A)
        if exact_data is None and use_exact is True:
            raise NormalizationError(
                "exact backend requested but the data could not be certified")
    space = HbSpace(b, a, A, grid, exact_data)
    res = space.pythagorean_residual()
    if res > config.PYTHAGOREAN_TOL:
        raise FactorizationError(
            f"Pythagorean identity residual {res:.3e} exceeds tolerance")
    return space


def make_space_from_phi(phi: UnitCircleFunction,
                        grid: config.GridConfig = config.DEFAULT_GRID,
                        use_exact: str | bool = "auto") -> HbSpace:
    """The space generated by a unit-norm outer function phi.

    Inverts the correspondence phi = a/(1-b): the analytic projection C
    of |phi|^2 satisfies C = 1/(1-b), so b = (C-1)/C.  Requires
    ||phi||_2 = 1 (then b(0) = 0 and the base Clark measure of the
    resulting space is |phi|^2 dm).
    """
    if not factor.is_outer(phi):
        raise ValueError("phi must be outer")
    cnum, cden = modulus_sq_rational(phi)
    C = analytic_projection(cnum, cden)
    mass = complex(C(0))
    if abs(mass - 1.0) > 1e-6:
        raise NormalizationError(
            f"phi must have unit norm (||phi||^2 = {mass.real:.9g})")
    b = UnitCircleFunction.rational(poly.psub(C.num, C.den), C.num)
    space = make_space(b, grid, use_exact)
    # independent check: the factorization route must reproduce |phi| data
    n = grid.n
    dens = (1 - np.abs(space.b.boundary_values(n)) ** 2) / \
        np.abs(1 - space.b.boundary_values(n)) ** 2
    target = np.abs(phi.boundary_values(n)) ** 2
    resid = float(np.max(np.abs(dens - target)))
    if resid > 1e-6 * max(1.0, float(np.max(target))):
        raise NormalizationError(
            f"generated space disagrees with |phi|^2 (residual {resid:.3e})")
    return space


# ---------------------------------------------------------------------------
# mates and inner products

def _pplus_conj_product(p: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Coefficients of P_+(conj(p) f) for polynomials."""
    out = np.zeros(f.size, dtype=complex)
    pc = np.conj(p)
    for m in range(f.size):
        top = min(p.size, f.size - m)
        out[m] = np.dot(pc[:top], f[m:m + top])
    return out


def mate(space: HbSpace, f) -> np.ndarray:
    """The mate f1 of a polynomial f, by banded back substitution.

    Solves P_+(conj(p) f + conj(A) f1) = 0 from the top coefficient down
    (zero tail; square-summable homogeneous solutions do not exist since
    A has no roots inside the disk), then verifies the residual.
    """
    f = poly.trim(np.asarray(f, dtype=complex))
    if poly.degree(f) < 0:
        return np.zeros(1, dtype=complex)
    rhs = -_pplus_conj_product(space.p, f)
    A = space.A
    g = np.zeros(rhs.size, dtype=complex)
    a0c = np.conj(A[0])
    for m in range(rhs.size - 1, -1, -1):
        acc = rhs[m]
        top = min(A.size, g.size - m)
        if top > 1:
            acc -= np.dot(np.conj(A[1:top]), g[m + 1:m + top])
        g[m] = acc / a0c
    resid = poly.padd(_pplus_conj_product(space.p, f),
                      _pplus_conj_product(A, g))
    scale = max(1.0, float(np.max(np.abs(f))))
    if float(np.max(np.abs(resid))) > config.MATE_RESIDUAL_TOL * scale:
        raise ArithmeticError(
            f"mate residual {float(np.max(np.abs(resid))):.3e} too large")
    return poly.trim(g, 1e-13)


def make_element(space: HbSpace, f) -> HbElement:
    """Embed a polynomial into H(b), computing its mate and norm."""
    if isinstance(f, UnitCircleFunction):
        f = f.to_polynomial()
    f = poly.trim(np.asarray(f, dtype=complex))
    f1 = mate(space, f)
    el = HbElement(space, f, f1)
    if space.exact is not None:
        try:
            fe = _rationalize(f)
        except ValueError:
            fe = None
        if fe is not None and _matches(fe, f):
            ge = exact.mate_solve(list(space.exact.p), list(space.exact.A), fe)
            if exact.mate_residual(list(space.exact.p), list(space.exact.A),
                                   fe, ge):
                raise ArithmeticError("exact mate residual is nonzero")
            el.exact_f = tuple(fe)
            el.exact_mate_scaled = tuple(ge)
    return el


def _matches(fe, f, tol: float = 1e-12) -> bool:
    vals = np.array([c.to_complex() for c in fe] + [0] * (len(f) - len(fe)))
    if vals.size < f.size:
        return False
    return bool(np.max(np.abs(vals[:f.size] - f)) <= tol *
                max(1.0, float(np.max(np.abs(f)))))


def inner_product(space: HbSpace, F: HbElement, G: HbElement) -> complex:
    """<f,g>_2 + <f1,g1>_2 through the embedding."""
    if F.space is not space or G.space is not space:
        raise SpaceMismatchError("elements belong to different spaces")
    return poly.hardy_inner(F.f, G.f) + poly.hardy_inner(F.mate, G.mate)


def inner_product_exact(space: HbSpace, F: HbElement, G: HbElement):
    """Exact inner product as a QC, or None when unavailable."""
    if space.exact is None or F.exact_f is None or G.exact_f is None:
        return None
    val = exact.qinner(F.exact_f, G.exact_f)
    val = val + exact.qinner(F.exact_mate_scaled, G.exact_mate_scaled) / \
        exact.QC(space.exact.s2)
    return val


# ---------------------------------------------------------------------------
# kernels

def kernel(space: HbSpace, lam: complex) -> UnitCircleFunction:
    """Reproducing kernel (1 - conj(b(lam)) b(z)) / (1 - conj(lam) z)."""
    lam = complex(lam)
    if abs(lam) >= 1:
        raise DomainError("kernel parameter must lie in the open disk")
    blam = complex(space.b(lam))
    num = poly.psub(space.q, np.conj(blam) * space.p)
    den = poly.pmul(space.q, np.array([1.0, -np.conj(lam)], dtype=complex))
    return UnitCircleFunction.rational(num, den)


def boundary_kernel(space: HbSpace, zeta: complex) -> UnitCircleFunction:
    """Kernel at a circle point where |b| = 1 (finite-defect eigenpoints).

    The pole of 1/(1 - conj(zeta) z) at zeta cancels against the zero of
    1 - conj(b(zeta)) b(z); the result is polynomial for polynomial b.
    """
    zeta = complex(zeta)
    if abs(abs(zeta) - 1) > 1e-9:
        raise DomainError("boundary kernel needs a unimodular point")
    c = complex(space.b(zeta))
    if abs(abs(c) - 1) > 1e-6:
        raise DomainError(
            f"|b({zeta:.6g})| = {abs(c):.6g} != 1: no boundary kernel there")
    num = poly.psub(space.q, np.conj(c) * space.p)
    quot, rem = poly.synthetic_div(num, zeta)
    if abs(rem) > 1e-8 * max(1.0, float(np.max(np.abs(num)))):
        raise ArithmeticError("numerator does not vanish at the kernel point")
    num2 = poly.trim(-zeta * quot)
    if poly.degree(space.q) == 0:
        return UnitCircleFunction.polynomial(num2 / space.q[0])
    return UnitCircleFunction.rational(num2, space.q)


def kernel_taylor_degree(lam: complex, tail_tol: float) -> int:
    """Smallest N with |lam|^N / (1-|lam|) below tail_tol."""
    r = abs(complex(lam))
    if r == 0:
        return 1
    n = int(np.ceil(np.log(tail_tol * (1 - r)) / np.log(r))) + 1
    return max(1, min(n, 8192))


def kernel_element(space: HbSpace, lam: complex,
                   tail_tol: float = config.KERNEL_TAIL_TOL) -> HbElement:
    """Taylor truncation of the kernel, embedded through the mate."""
    k = kernel(space, lam)
    n = kernel_taylor_degree(lam, tail_tol)
    coeffs = poly.series_div(k.num, k.den, n + 1)
    return make_element(space, coeffs)


def element_from_rational(space: HbSpace, fn: UnitCircleFunction,
                          tail_tol: float = config.KERNEL_TAIL_TOL,
                          max_degree: int = 8192) -> HbElement:
    """Embed a rational function analytic on the closed disk by truncation."""
    if fn.is_polynomial():
        return make_element(space, fn.to_polynomial())
    rho = min(abs(r) for r, _ in poly.roots_with_multiplicity(fn.den))
    if rho <= 1 + 1e-9:
        raise DomainError("rational element needs poles outside the closed "
                          "disk")
    n = 64
    while n <= max_degree:
        coeffs = poly.series_div(fn.num, fn.den, n + 1)
        tail = abs(coeffs[-1]) * rho / (rho - 1)
        if tail <= tail_tol * max(1.0, float(np.max(np.abs(coeffs)))):
            return make_element(space, coeffs[:-1])
        n *= 2
    raise ArithmeticError("Taylor tail did not meet the tolerance")


def divide_inner(space: HbSpace, element: HbElement) -> HbElement:
    """The element f/theta, where theta is the inner factor of f."""
    f = element.f
    if poly.degree(f) < 0:
        raise ValueError("cannot divide the zero element")
    theta, outer = factor.inner_outer(f, space.grid)
    if not theta.zeros:
        return element
    return make_element(space, outer.to_polynomial())
