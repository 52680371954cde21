"""Locate all shell resonances in a momentum rectangle and tabulate them.

Also shows how the widths collapse as the barrier grows: a tall shell traps
the inner region almost perfectly and the spectrum approaches the real
n*pi/a levels of a closed box.
"""

import numpy as np

from radscat import PhysicalScale, Region, find_resonances, make_shell

scale = PhysicalScale(kappa=1.0)

print("shell V0=8, a=1, b=2, poles with Re k in (0, 6], Im k in [-2, 0):")
shell = make_shell(8.0, 1.0, 2.0, scale)
states = find_resonances(shell, scale, Region(1e-6, 6.0, -2.0, -1e-6))
print(f"{'n':>2} {'Re k':>12} {'Im k':>12} {'E_n':>12} {'Gamma_n':>12} {'|N^2|':>10}")
for n, st in enumerate(states, start=1):
    print(f"{n:2d} {st.k_pole.real:12.7f} {st.k_pole.imag:12.7f} "
          f"{st.e_res:12.7f} {st.gamma:12.7f} {abs(st.norm_sq):10.5f}")

print("\nwidth of the lowest resonance vs barrier height:")
for v0 in (8.0, 20.0, 50.0, 120.0):
    pot = make_shell(v0, 1.0, 2.0, scale)
    st = find_resonances(pot, scale, Region(0.5, 4.0, -1.0, -1e-13))[0]
    print(f"  V0 = {v0:6.1f}: Re k1 = {st.k_pole.real:.6f}, "
          f"Gamma = {st.gamma:.3e}")
print(f"  (closed-box limit: k1 -> pi/a = {np.pi:.6f})")
