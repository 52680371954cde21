"""Scattering phase across the lowest resonance of the shell potential.

The S matrix is unimodular on the physical line, so all the physics is in
its phase; across a narrow resonance the phase steps by about 2 pi.  Run
with python3; prints a small table suitable for piping into a plotter.
"""

import math

import numpy as np

from radscat import PhysicalScale, Region, find_resonances, make_shell, s_matrix

scale = PhysicalScale(kappa=1.0)
shell = make_shell(8.0, 1.0, 2.0, scale)

state = find_resonances(shell, scale, Region(2.0, 2.5, -0.1, -1e-6))[0]
print(f"lowest resonance: E = {state.e_res:.6f}, Gamma = {state.gamma:.6f}")

k_lo = math.sqrt(state.e_res - 5 * state.gamma)
k_hi = math.sqrt(state.e_res + 5 * state.gamma)
ks = np.linspace(k_lo, k_hi, 41)
phases = np.unwrap([np.angle(s_matrix(shell, scale, k).s) for k in ks])

print(f"{'k':>10} {'E':>10} {'|S|':>12} {'arg S':>10}")
for k, ph in zip(ks, phases):
    s = s_matrix(shell, scale, k).s
    print(f"{k:10.5f} {k**2:10.5f} {abs(s):12.10f} {ph:10.5f}")

print(f"\nphase sweep across the window: {phases[-1] - phases[0]:.4f} rad "
      f"(2 pi = {2 * math.pi:.4f})")
