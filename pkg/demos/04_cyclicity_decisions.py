"""Deciding cyclicity: classifier, distance decay, and necessity.

A vector is cyclic when its polynomial multiples are dense; since
polynomials are dense, this is the same as approximating the constant 1.
Three routes are compared on b = (1+z)/2, where the answer is known in
closed form: f is cyclic iff it is outer and f(1) != 0.

  * the finite-defect classifier (theorem-grade for rational b),
  * the decay of d_N^2 = dist^2(1, span{f, zf, ..., z^{N-1}f}),
  * the Clark-atom necessity test.
"""

import numpy as np

from hblab import (UnitCircleFunction as UCF, assess, classify_finite_defect,
                   decay_table, estimate_from_decay, make_space,
                   necessity_check)

space = make_space(UCF.polynomial([0.5, 0.5]))

for label, f in (("1+z", [1.0, 1.0]), ("1-z", [1.0, -1.0]),
                 ("z", [0.0, 1.0])):
    rep = classify_finite_defect(space, f)
    print(f"f = {label}: classifier says {rep.verdict}")

# -- decay tables ---------------------------------------------------------
# For f = 1+z the distances follow the exact law 2/(2N+1); for f = 1-z
# they sit at ||1||^2 = 2 forever because 1 is orthogonal to the span.
t_good = decay_table(space, [1.0, 1.0], 60, use_exact="auto")
t_bad = decay_table(space, [1.0, -1.0], 24, use_exact="auto")
print("\nd_N^2 for 1+z:", [round(d, 5) for _n, d in t_good.entries[:5]],
      "...", round(t_good.entries[-1][1], 5))
print("exact values:  ",
      [str(d) for _n, d in (t_good.exact_entries or [])[:5]])
print("d_N^2 for 1-z:", sorted({round(d, 10)
                                for _n, d in t_bad.entries}))
print("heuristic verdicts:", estimate_from_decay(t_good).verdict, "/",
      estimate_from_decay(t_bad).verdict)

# -- necessity through the measure family --------------------------------
space2 = make_space(UCF.polynomial([0.0, 0.5, 0.5]))   # b = z(1+z)/2
out = necessity_check(space2, [1.0, -1.0])
print("\nnecessity for 1-z in the z(1+z)/2 space: passed =", out.passed,
      " witness (alpha, atom) =", out.witness)

# -- everything merged ----------------------------------------------------
report = assess(space, [1.0, 1.0], n_max=32)
print("\nmerged report for 1+z:")
for ev in report.evidence:
    print("  rule:", ev.rule)
print("final verdict:", report.verdict)
