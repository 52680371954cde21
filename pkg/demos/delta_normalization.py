"""Numerically probing delta-normalization of the continuum families.

Distributional orthonormality cannot be checked pointwise; it only makes
sense smeared against a smooth test function.  With a Gaussian g(E) the
identity collapses to comparing int dr |int dE g <r|E>|^2 with int |g|^2 dE.
"""

from radscat import Family, PhysicalScale, make_shell, smeared_delta_check

scale = PhysicalScale(kappa=1.0)
shell = make_shell(8.0, 1.0, 2.0, scale)
free = make_shell(0.0, 1.0, 2.0, scale)

print("Gaussian test function centered at E=16, width 2:")
for name, pot in (("free", free), ("shell", shell)):
    for fam in Family:
        rep = smeared_delta_check(fam, pot, scale, 16.0, 2.0)
        print(f"  {name:5s} {fam.value:14s} lhs={rep.lhs:.10f} "
              f"rhs={rep.rhs:.10f} rel err {rep.relative_error:9.3e} "
              f"converged={rep.converged}")
