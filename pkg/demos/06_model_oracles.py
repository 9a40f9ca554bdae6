"""Closed-form model spaces as independent ground truth.

Two families have fully explicit cyclicity theory and no dependence on
the factorization pipeline, so they serve as oracles: Dirichlet spaces
of finitely supported boundary measures (norms from difference
quotients) and half-shifted inner models b = (1+theta)/2 whose singular
measure sits on the level set theta = 1.  Their verdicts must agree
with the general machinery wherever both apply.
"""

import numpy as np

from hblab import (DirichletSpec, UnitCircleFunction as UCF,
                   classify_finite_defect, dirichlet_cyclic,
                   dirichlet_integral, dirichlet_norm, make_space,
                   theta_cyclic, theta_model, universal_cyclicity)

# -- Dirichlet spaces -------------------------------------------------------
spec = DirichletSpec([(1.0, 1.0)])
print("D(point mass at 1):")
for label, f in (("1-z", [1.0, -1.0]), ("1", [1.0]), ("1+z", [1.0, 1.0])):
    print(f"  f = {label}: local integral {dirichlet_integral(spec, f)}, "
          f"norm^2 {dirichlet_norm(spec, f)}, "
          f"{dirichlet_cyclic(spec, f).verdict}")

# -- half-shifted inner models ----------------------------------------------
print("\ntheta = z^2 model:")
m = theta_model(UCF.blaschke([0, 0]))
print("  model dimension:", m.model_dimension)
print("  atoms:", [(np.round(z, 8), round(mm, 8)) for z, mm in m.atoms])
print("  verdicts: 2+z ->", theta_cyclic(m, [2.0, 1.0]).verdict,
      ", 1-z ->", theta_cyclic(m, [1.0, -1.0]).verdict)

# theta = z reproduces the b = (1+z)/2 space exactly, so the model rule
# and the finite-defect classifier must agree function by function.
m1 = theta_model(UCF.blaschke([0]))
space = make_space(UCF.polynomial([0.5, 0.5]))
print("\ntriangulation against the classifier (theta = z):")
for f in ([1.0], [1.0, 1.0], [1.0, -1.0], [0.0, 1.0], [1.0, 0.0, -1.0]):
    a = theta_cyclic(m1, f).verdict
    b = classify_finite_defect(space, f).verdict
    print(f"  {str(f):22s} model: {a:12s} classifier: {b:12s} "
          f"{'OK' if a == b else 'MISMATCH'}")

# -- universal facts ---------------------------------------------------------
# b itself is cyclic iff outer, and kernels are always cyclic.
print("\nuniversal checks:")
for coeffs, label in (([0.5, 0.5], "(1+z)/2"), ([0.0, 0.5, 0.5],
                                                "z(1+z)/2")):
    rep = universal_cyclicity(make_space(UCF.polynomial(coeffs)),
                              n_kernels=2, decay_n=40)
    kern = [e for e in rep.evidence if e.rule == "kernel_cyclicity"][0]
    print(f"  b = {label}: b verdict {rep.verdict}, kernel decays "
          f"{[v for _l, v in kern.numbers['verdicts']]}")
