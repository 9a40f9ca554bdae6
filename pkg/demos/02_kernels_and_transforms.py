"""Reproducing kernels and the normalized Cauchy transform.

The kernel at a point lam of the disk is the rational function
(1 - conj(b(lam)) b(z)) / (1 - conj(lam) z); its squared norm equals its
value at lam.  The same spaces are unitarily parametrized by measures on
the circle: V h = C_mu(h)/C_mu(1) maps polynomials in L^2(mu) onto the
space isometrically.  Both facts are checked numerically here, along
with boundary kernels at points where |b| = 1.
"""

import numpy as np

from hblab import (UnitCircleFunction as UCF, boundary_kernel,
                   clark_measure, element_from_rational, inner_product,
                   kernel, kernel_element, make_element, make_space,
                   normalized_cauchy, normalized_cauchy_rational)
from hblab.config import unit_circle_points

space = make_space(UCF.polynomial([0.0, 0.5]))   # b = z/2

# -- norm identity: <k, k> = k(lam) = (1-|b(lam)|^2)/(1-|lam|^2) ------------
lam = 0.37 + 0.21j
el = kernel_element(space, lam)                  # Taylor-truncated kernel
lhs = inner_product(space, el, el).real
rhs = (1 - abs(complex(space.b(lam))) ** 2) / (1 - abs(lam) ** 2)
print(f"||k||^2 by mates  = {lhs:.12f}")
print(f"closed form       = {rhs:.12f}")

# -- reproducing property ---------------------------------------------------
f = make_element(space, [1.0, 2.0, 3.0])
print("\n<f, k_lam> =", inner_product(space, f, el))
print("f(lam)     =", 1 + 2 * lam + 3 * lam ** 2)

# -- the transform route -----------------------------------------------------
# V maps the monomials of L^2(mu_1) to concrete rational functions whose
# mate-norms reproduce the measure's moment matrix.
cm = clark_measure(space, 1.0)
v_z = normalized_cauchy_rational(space, 1.0, [0.0, 1.0], measure=cm)
print("\nV(z) as a rational function:", np.round(v_z.num, 6), "/",
      np.round(v_z.den, 6))
image = element_from_rational(space, v_z)
print("||V(z)||_b^2 =", inner_product(space, image, image).real,
      " (moment <z,z>_mu = 1)")

# quadrature evaluation agrees with the symbolic form everywhere inside
transform = normalized_cauchy(space, 1.0, [0.0, 1.0], measure=cm)
zs = 0.8 * unit_circle_points(8)
print("max |symbolic - quadrature| =",
      float(np.max(np.abs(v_z(zs) - transform(zs)))))

# -- boundary kernels --------------------------------------------------------
# Where |b| reaches 1 on the circle the kernel survives as a genuine
# element; for b = (1+z)/2 that happens at z = 1 and k_1 = 1/2.
space_h = make_space(UCF.polynomial([0.5, 0.5]))
k1 = boundary_kernel(space_h, 1.0)
print("\nboundary kernel of (1+z)/2 at 1:", k1.to_polynomial())
k1el = make_element(space_h, k1.to_polynomial())
g = make_element(space_h, [4.0, -1.0, 2.0])
print("<g, k_1> =", inner_product(space_h, g, k1el), " g(1) =", 5.0)
