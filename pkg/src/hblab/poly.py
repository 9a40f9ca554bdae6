"""Dense complex polynomial helpers.

Coefficients are 1-D complex arrays, lowest degree first, so [1, 2, 3]
is 1 + 2z + 3z^2.  Root finding is companion-matrix eigenvalues followed
by multiplicity clustering and modified Newton polishing.
"""

from __future__ import annotations

import numpy as np

from . import config


def aspoly(c) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(c, dtype=complex))
    if arr.ndim != 1:
        raise ValueError("polynomial coefficients must be one-dimensional")
    return arr


def trim(c, rtol: float = 1e-12) -> np.ndarray:
    """Strip trailing coefficients that are negligible relative to the max."""
    arr = aspoly(c)
    scale = max(1.0, float(np.max(np.abs(arr))) if arr.size else 0.0)
    n = arr.size
    while n > 1 and abs(arr[n - 1]) <= rtol * scale:
        n -= 1
    if n == 1 and abs(arr[0]) <= rtol * scale and rtol > 0:
        return np.zeros(1, dtype=complex)
    return arr[:n].copy()


def degree(c) -> int:
    arr = trim(c)
    if arr.size == 1 and arr[0] == 0:
        return -1
    return arr.size - 1


def padd(p, q) -> np.ndarray:
    p, q = aspoly(p), aspoly(q)
    n = max(p.size, q.size)
    out = np.zeros(n, dtype=complex)
    out[: p.size] += p
    out[: q.size] += q
    return out


def psub(p, q) -> np.ndarray:
    return padd(p, -aspoly(q))


def pmul(p, q) -> np.ndarray:
    p, q = aspoly(p), aspoly(q)
    return np.convolve(p, q)


def horner(c, z):
    """Evaluate at a scalar or array of points."""
    arr = aspoly(c)
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, arr[-1], dtype=complex)
    for k in range(arr.size - 2, -1, -1):
        acc = acc * z + arr[k]
    return acc if acc.shape else complex(acc)


def conj_coeffs(c) -> np.ndarray:
    return np.conj(aspoly(c))


def reverse_conj(c) -> np.ndarray:
    """z^deg * conj(p(1/conj(z))): reflects roots across the circle."""
    return np.conj(aspoly(c))[::-1].copy()


def l2sq(c) -> float:
    arr = aspoly(c)
    return float(np.sum(np.abs(arr) ** 2))


def hardy_inner(p, q) -> complex:
    """sum_k p_k conj(q_k)."""
    p, q = aspoly(p), aspoly(q)
    n = min(p.size, q.size)
    return complex(np.sum(p[:n] * np.conj(q[:n])))


def synthetic_div(c, root: complex):
    """Divide by (z - root); returns (quotient, remainder)."""
    arr = aspoly(c)
    if arr.size == 1:
        return np.zeros(1, dtype=complex), complex(arr[0])
    out = np.empty(arr.size - 1, dtype=complex)
    acc = arr[-1]
    for k in range(arr.size - 2, -1, -1):
        out[k] = acc
        acc = arr[k] + acc * root
    return out, complex(acc)


def polydiv(num, den):
    """Long division: num = quot*den + rem with deg rem < deg den."""
    num, den = trim(num), trim(den)
    if degree(den) < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = np.polydiv(num[::-1], den[::-1])
    quot = np.atleast_1d(q)[::-1].astype(complex)
    rem = np.atleast_1d(r)[::-1].astype(complex)
    return trim(quot, 0.0), rem


def series_inv(den, n: int) -> np.ndarray:
    """Power series coefficients of 1/den to order n-1 (den[0] != 0)."""
    return series_div(np.array([1.0 + 0j]), den, n)


def series_div(num, den, n: int) -> np.ndarray:
    """Power series coefficients of num/den to order n-1 (den[0] != 0)."""
    num, den = aspoly(num), aspoly(den)
    if den[0] == 0:
        raise ZeroDivisionError("series division needs den(0) != 0")
    out = np.zeros(n, dtype=complex)
    for m in range(n):
        acc = num[m] if m < num.size else 0.0
        for k in range(1, min(m, den.size - 1) + 1):
            acc -= den[k] * out[m - k]
        out[m] = acc / den[0]
    return out


def taylor_shift(c, center: complex) -> np.ndarray:
    """Coefficients of p(center + t) as a polynomial in t."""
    arr = aspoly(c).copy()
    n = arr.size
    out = np.empty(n, dtype=complex)
    for k in range(n):
        arr, rem = synthetic_div(arr, center) if arr.size > 1 else (
            np.zeros(1, dtype=complex), complex(arr[0]))
        out[k] = rem
    return out


def derivative(c) -> np.ndarray:
    arr = aspoly(c)
    if arr.size == 1:
        return np.zeros(1, dtype=complex)
    return arr[1:] * np.arange(1, arr.size)


def from_roots(root_mult_pairs, lead: complex = 1.0) -> np.ndarray:
    """Expand lead * prod (z - r)^m."""
    out = np.array([complex(lead)])
    for r, m in root_mult_pairs:
        for _ in range(int(m)):
            out = pmul(out, np.array([-r, 1.0], dtype=complex))
    return out


def _polish(p, dp, z: complex, mult: int) -> complex:
    for _ in range(30):
        pv = horner(p, z)
        dv = horner(dp, z)
        if dv == 0:
            break
        step = mult * pv / dv
        if not np.isfinite(step):
            break
        z = z - step
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            break
    return z


def roots_with_multiplicity(c, cluster_rtol: float | None = None):
    """All complex roots with multiplicities.

    Companion-matrix eigenvalues, clustered at the configured relative
    radius, then polished with the multiplicity-aware Newton step.
    """
    arr = trim(c)
    if degree(arr) < 1:
        raise ValueError("root finding needs degree >= 1")
    rtol = config.ROOT_CLUSTER_RTOL if cluster_rtol is None else cluster_rtol
    raw = np.roots(arr[::-1])
    clusters: list[list[complex]] = []
    for r in sorted(raw, key=lambda t: (abs(t), np.angle(t))):
        for cl in clusters:
            center = np.mean(cl)
            if abs(r - center) <= rtol * max(1.0, abs(center)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    dp = derivative(arr)
    out = []
    for cl in clusters:
        z = _polish(arr, dp, complex(np.mean(cl)), len(cl))
        out.append((z, len(cl)))
    out.sort(key=lambda t: (abs(t[0]), np.angle(t[0])))
    return out
