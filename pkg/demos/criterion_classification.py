"""Which continuum normalizations are just normalizations?

A factor f(E) multiplying the regular solution is a pure normalization when
conj(f(conj(E))) == f(E) over the complex energy plane.  The standing-wave
weight passes; the in/out factors carry the Jost function and fail, which is
the analytic fingerprint of genuinely different boundary conditions.
"""

from radscat import Family, PhysicalScale, classify_eigensolution, make_shell

scale = PhysicalScale(kappa=1.0)
shell = make_shell(8.0, 1.0, 2.0, scale)
free = make_shell(0.0, 1.0, 2.0, scale)

print("shell V0=8:")
for fam in Family:
    rep = classify_eigensolution(fam, shell, scale)
    print(f"  {fam.value:14s} max deviation {rep.max_deviation:10.3e}  "
          f"-> {rep.classification}")

print("\nfree potential (Jost functions are 1, so every factor degenerates):")
for fam in Family:
    rep = classify_eigensolution(fam, free, scale)
    print(f"  {fam.value:14s} max deviation {rep.max_deviation:10.3e}  "
          f"-> {rep.classification}")
