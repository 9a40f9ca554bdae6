"""Non-exposure bounds, Toeplitz sections, and cyclicity certificates.

Beyond the finite-defect case, cyclicity is governed by a boundary set
attached to the outer function phi = a/(1-b): the points where some
pseudocontinuable quotient h in H^2/phi with conj(phi) h anti-analytic
fails to continue across the circle.  The set is bracketed by Clark
atoms from below and by the unimodular zeros of phi from above, and the
kernel of the Toeplitz operator with the unimodular symbol conj(phi)/phi
measures it spectrally.  Certificates then verify cyclicity from arc
data alone.
"""

import numpy as np

from hblab import (Arc, UnitCircleFunction as UCF, jphi_membership_residuals,
                   make_space, make_space_from_phi, pseudocontinuation_eval,
                   sigma_bounds, theorem_a_check, theorem_b_check,
                   theorem_c_check, toeplitz_kernel_sections)

# -- the space generated by phi = (1-z)/sqrt(2) ---------------------------
phi = UCF.polynomial([1 / np.sqrt(2), -1 / np.sqrt(2)])
space = make_space_from_phi(phi)
print("b =", np.round(space.b.num, 6), "/", np.round(space.b.den, 6))

bounds = sigma_bounds(space)
print("non-exposure bracket: lower",
      [np.round(z, 8) for z in bounds.lower], " upper",
      [np.round(z, 8) for z in bounds.upper])

# -- finite sections --------------------------------------------------------
rep = toeplitz_kernel_sections(phi, 64)
print("\nsection near-kernel counts:", rep.near_kernel_counts,
      "-> estimated kernel dimension", rep.estimated_kernel_dim)
rep2 = toeplitz_kernel_sections(UCF.rational([np.sqrt(3)], [2.0, 1.0]), 64)
print("exposed comparison symbol:   ", rep2.near_kernel_counts,
      " smallest singular values", {m: round(s, 4)
                                    for m, s in rep2.smallest.items()})

# -- a pseudocontinuable witness ------------------------------------------
# h = 1/(1-z) spans the obstruction space for this phi: phi*h is constant
# and conj(phi)*h is purely anti-analytic.
h = UCF.rational([1.0], [1.0, -1.0], boundary_singular=True)
print("\nmembership residuals of the witness:",
      jphi_membership_residuals(phi, h))
for z in (-0.9, -1 / 0.9, 0.5j, 2.0j):
    val = pseudocontinuation_eval(phi, h, z)
    print(f"  extension at {z}: {val:.8f} (rational value "
          f"{1 / (1 - z):.8f})")

# -- certificates -----------------------------------------------------------
space_h = make_space(UCF.polynomial([0.5, 0.5]))
outA = theorem_a_check(space_h, [1.0, 1.0],
                       [Arc.from_angles(0.1, 2 * np.pi - 0.1)],
                       [Arc.from_angles(-0.5, 0.5)])
print("\nrule A on (1+z)/2 with f = 1+z:", outA.report.verdict)

outB = theorem_b_check(space, [1.0, 1.0],
                       [(Arc.from_angles(-0.2, 0.2), 0.5)])
print("rule B with an arc around the obstruction:", outB.report.verdict)

space_z = make_space(UCF.polynomial([0.0, 0.5]))
big_f, outC = theorem_c_check(space_z, [1.0])
print("rule C with g = 1:", outC.report.verdict,
      " image =", big_f.to_polynomial())
