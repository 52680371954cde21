"""Structure of a Gamow resonance eigenfunction.

The state is the regular solution at a pole momentum, scaled so that the
exterior is exactly N * e^{ikr}: purely outgoing, with no incoming
component.  Because Im k < 0 the tail grows with r, which is why these
states live outside the usual Hilbert space.
"""

import numpy as np

from radscat import (
    PhysicalScale,
    Region,
    find_resonances,
    gamow_eigenfunction,
    growing_partner,
    make_shell,
)

scale = PhysicalScale(kappa=1.0)
shell = make_shell(8.0, 1.0, 2.0, scale)
state = find_resonances(shell, scale, Region(1e-6, 6.0, -2.0, -1e-6))[0]

print(f"pole k1 = {state.k_pole:.10f}")
print(f"z1 = {state.z_pole:.10f}  (E = {state.e_res:.6f}, Gamma = {state.gamma:.6f})")
print(f"N^2 = i res S = {state.norm_sq:.10f}")

partner = growing_partner(state)
print(f"growing partner at {partner.k_pole:.10f}, "
      f"M^2 = {partner.norm_sq:.10f} = conj(N^2)")

b = shell.outer_radius
print(f"\nexterior factorization u(r) / e(i k r), r in [b, 5b]  (b = {b}):")
print(f"{'r':>6} {'|u(r)|':>14} {'u/e^ikr':>32}")
for r in np.linspace(b, 5 * b, 9):
    u = gamow_eigenfunction(state, r)
    ratio = u / np.exp(1j * state.k_pole * r)
    print(f"{r:6.2f} {abs(u):14.6e} {ratio:32.12f}")
print(f"\nconstant ratio equals N = {state.norm:.12f}")
