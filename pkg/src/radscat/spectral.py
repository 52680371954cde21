"""Jost functions, S-matrix, spectral measures and delta-normalized families.

Three continuum eigenfunction families share the same radial shape chi(r;k)
and differ only by the energy-dependent factor in front of it:

    standing wave:  sqrt(rho(k)) chi(r;k)
    in:             sqrt(rho+(k)) chi(r;k) / Jplus(k)
    out:            sqrt(rho-(k)) chi(r;k) / Jminus(k)
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import simpson

from .potential import PhysicalScale, Potential, sqrt_branch
from .solution import evaluate_chi, solve_regular


class Family(str, enum.Enum):
    STANDING_WAVE = "standing_wave"
    IN = "in"
    OUT = "out"


class PoleError(ArithmeticError):
    """S-matrix evaluation requested at a (numerical) zero of Jplus."""


@dataclass(frozen=True)
class JostPair:
    k: complex
    j_plus: complex
    j_minus: complex


@dataclass(frozen=True)
class SMatrixValue:
    k: complex
    s: complex


@dataclass(frozen=True)
class EigenfunctionFamily:
    kind: Family
    measure: Callable[[float], float]


def jost(pot: Potential, scale: PhysicalScale, k: complex) -> JostPair:
    """Jost functions from the exterior amplitudes: Jplus = -2i J4, Jminus = 2i J3."""
    j3, j4 = solve_regular(pot, scale, k).exterior_amplitudes
    return JostPair(k=complex(k), j_plus=-2j * j4, j_minus=2j * j3)


def s_matrix(pot: Potential, scale: PhysicalScale, k: complex) -> SMatrixValue:
    """S(k) = Jminus/Jplus; raises PoleError at zeros of Jplus."""
    jp = jost(pot, scale, k)
    if abs(jp.j_plus) <= 1e-14 * abs(jp.j_minus):
        raise PoleError(f"Jplus vanishes at k={k}: resonance pole")
    return SMatrixValue(k=complex(k), s=jp.j_minus / jp.j_plus)


def measure(kind: Family, pot: Potential, scale: PhysicalScale, k: float) -> float:
    """Spectral measure on the physical line k > 0."""
    k = float(k)
    if k <= 0:
        raise ValueError(f"measure defined for real k > 0, got {k}")
    if kind == Family.STANDING_WAVE:
        _, j4 = solve_regular(pot, scale, k).exterior_amplitudes
        return scale.kappa / (4 * math.pi * k * abs(j4) ** 2)
    return scale.kappa / (math.pi * k)


def family(kind: Family, pot: Potential, scale: PhysicalScale) -> EigenfunctionFamily:
    kind = Family(kind)
    return EigenfunctionFamily(kind=kind, measure=lambda k: measure(kind, pot, scale, k))


def eigenfunction(kind: Family, pot: Potential, scale: PhysicalScale, energy: float, r):
    """Delta-normalized eigenfunction of the given family at real energy > 0.

    Vectorized over r.
    """
    kind = Family(kind)
    energy = float(energy)
    if energy <= 0:
        raise ValueError(f"physical spectrum is (0, inf); got E={energy}")
    k = sqrt_branch(scale.kappa * energy).real
    sol = solve_regular(pot, scale, k)
    j3, j4 = sol.exterior_amplitudes
    chi = evaluate_chi(sol, r)
    if kind == Family.STANDING_WAVE:
        rho = scale.kappa / (4 * math.pi * k * abs(j4) ** 2)
        return math.sqrt(rho) * chi
    rho = scale.kappa / (math.pi * k)
    denom = -2j * j4 if kind == Family.IN else 2j * j3
    if abs(denom) == 0:
        raise PoleError(f"Jost function vanishes at E={energy}")
    return math.sqrt(rho) / denom * chi


def energy_transform(
    kind: Family,
    pot: Potential,
    scale: PhysicalScale,
    psi: Sequence[complex],
    r_max: float,
    e_grid: Sequence[float],
) -> np.ndarray:
    """Overlap coefficients psi_hat(E) = int dr conj(<r|E>) psi(r).

    ``psi`` must be sampled on a uniform grid over [0, r_max]; the quadrature
    is composite Simpson.  The sampling must resolve the fastest oscillation
    sin(k_max r): aim for dr < pi / (4 k_max) or a heuristic warning is
    emitted.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 3:
        raise ValueError("psi must be a 1-d array of at least 3 samples")
    e_grid = np.asarray(e_grid, dtype=float)
    if e_grid.size == 0:
        raise ValueError("empty energy grid")
    if np.any(np.diff(e_grid) <= 0):
        raise ValueError("energy grid must be strictly increasing")
    if e_grid[0] <= 0:
        raise ValueError("energies must be positive")
    r = np.linspace(0.0, float(r_max), psi.size)
    dr = r[1] - r[0]
    k_max = sqrt_branch(scale.kappa * e_grid[-1]).real
    if k_max * dr > math.pi / 4:
        warnings.warn(
            f"psi sampling (dr={dr:.3g}) may undersample oscillations at "
            f"k_max={k_max:.3g}; refine the r grid",
            RuntimeWarning,
        )
    coeffs = np.empty(e_grid.size, dtype=complex)
    for i, energy in enumerate(e_grid):
        phi = eigenfunction(kind, pot, scale, energy, r)
        coeffs[i] = simpson(np.conj(phi) * psi, x=r)
    return coeffs
