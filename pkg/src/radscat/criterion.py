"""Normalization-vs-new-physics criterion on complex energy grids.

A factor f(E) multiplying the regular solution is "just a normalization"
when conj(f(conj(E))) == f(E) throughout the complex plane; otherwise the
factored eigensolution carries different physical content.  Floating point
turns the exact dichotomy into a scaled threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .potential import PhysicalScale, Potential, sqrt_branch
from .solution import solve_regular
from .spectral import Family

#: classification threshold, scaled by (1 + max|f|) on the grid
SYMMETRY_RTOL = 1e-10

NORMALIZATION = "normalization"
PHYSICALLY_DISTINCT = "physically_distinct"

_CUT_EPS = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Rectangle in the complex energy plane with sample counts."""

    re_min: float = 0.1
    re_max: float = 20.0
    im_min: float = -5.0
    im_max: float = 5.0
    n_re: int = 80
    n_im: int = 80
    exclude_real_band: float = 0.0

    def points(self) -> np.ndarray:
        re = np.linspace(self.re_min, self.re_max, self.n_re)
        im = np.linspace(self.im_min, self.im_max, self.n_im)
        if self.exclude_real_band > 0:
            im = im[np.abs(im) >= self.exclude_real_band]
        pts = (re[:, None] + 1j * im[None, :]).ravel()
        args = np.angle(pts)
        bad = (args <= -math.pi + _CUT_EPS) | (args >= math.pi - _CUT_EPS)
        if bad.any():
            raise ValueError(
                "grid touches the branch cut edge: arg(E) must stay inside "
                f"(-pi + {_CUT_EPS}, pi - {_CUT_EPS})"
            )
        return pts


@dataclass(frozen=True)
class CriterionReport:
    function_label: str
    max_deviation: float
    classification: str
    grid: GridSpec
    max_abs: float = 0.0
    n_nonfinite: int = 0

    @property
    def is_normalization(self) -> bool:
        return self.classification == NORMALIZATION


def check_symmetry(
    f: Callable[[complex], complex],
    grid: GridSpec | None = None,
    label: str = "f",
    rtol: float = SYMMETRY_RTOL,
) -> CriterionReport:
    """Max over the grid of |conj(f(conj(E))) - f(E)| and its classification.

    Non-finite evaluations are excluded from the max and counted in the
    report instead of raising.
    """
    grid = grid or GridSpec()
    pts = grid.points()
    vals = np.array([complex(f(e)) for e in pts])
    mirror = np.array([complex(f(e.conjugate())).conjugate() for e in pts])
    dev = np.abs(mirror - vals)
    finite = np.isfinite(dev) & np.isfinite(np.abs(vals))
    n_bad = int(np.size(dev) - np.count_nonzero(finite))
    if not finite.any():
        raise ValueError(f"no finite evaluations of {label} on the grid")
    max_dev = float(dev[finite].max())
    max_abs = float(np.abs(vals[finite]).max())
    cls = NORMALIZATION if max_dev <= rtol * (1 + max_abs) else PHYSICALLY_DISTINCT
    return CriterionReport(
        function_label=label,
        max_deviation=max_dev,
        classification=cls,
        grid=grid,
        max_abs=max_abs,
        n_nonfinite=n_bad,
    )


def _j34(pot: Potential, scale: PhysicalScale, energy: complex) -> tuple[complex, complex]:
    k = sqrt_branch(scale.kappa * energy)
    return solve_regular(pot, scale, k).exterior_amplitudes


def standing_measure_continued(pot: Potential, scale: PhysicalScale, energy: complex) -> complex:
    """rho(E) off the real axis.

    |J4|^2 is not analytic; the continuation J4(k) * conj(J4(conj(k))) agrees
    with it on the real line and keeps rho conjugation-symmetric.
    """
    k = sqrt_branch(scale.kappa * complex(energy))
    _, j4 = solve_regular(pot, scale, k).exterior_amplitudes
    _, j4c = solve_regular(pot, scale, k.conjugate()).exterior_amplitudes
    return scale.kappa / (4 * math.pi * k * (j4 * j4c.conjugate()))


def scattering_measure_continued(scale: PhysicalScale, energy: complex) -> complex:
    """rho+(E) = rho-(E) continued off the real axis."""
    k = sqrt_branch(scale.kappa * complex(energy))
    return scale.kappa / (math.pi * k)


def eigensolution_factor(
    kind: Family, pot: Potential, scale: PhysicalScale
) -> Callable[[complex], complex]:
    """The energy-dependent factor multiplying chi for the given family."""
    kind = Family(kind)

    def f(energy: complex) -> complex:
        if kind == Family.STANDING_WAVE:
            return sqrt_branch(standing_measure_continued(pot, scale, energy))
        root = sqrt_branch(scattering_measure_continued(scale, energy))
        j3, j4 = _j34(pot, scale, energy)
        denom = -2j * j4 if kind == Family.IN else 2j * j3
        return root / denom

    return f


def classify_eigensolution(
    kind: Family,
    pot: Potential,
    scale: PhysicalScale,
    grid: GridSpec | None = None,
    rtol: float = SYMMETRY_RTOL,
) -> CriterionReport:
    """Apply check_symmetry to the family's chi-multiplying factor."""
    kind = Family(kind)
    return check_symmetry(eigensolution_factor(kind, pot, scale), grid,
                          label=kind.value, rtol=rtol)
