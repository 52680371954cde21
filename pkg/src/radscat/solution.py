"""Regular solution of the radial Schrodinger equation by interface matching.

The solution chi(r; k) starts as sin(q0 r) in the innermost layer and is
propagated across each breakpoint by enforcing continuity of chi and chi'.
Per layer, chi = exp(ls) * (a_out e^{i q (r - r0)} + a_in e^{-i q (r - r0)})
with r0 the left edge; the real exponent ls absorbs exponential growth so
that deep-complex-k evaluations do not overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .potential import PhysicalScale, Potential, local_wavenumber


@dataclass(frozen=True)
class LayerWave:
    """Amplitudes of one layer in left-edge-referenced, log-scaled form.

    If ``q == 0`` the basis degenerates to {1, r - r_left} and (a_out, a_in)
    are the (constant, slope) coefficients instead.
    """

    q: complex
    r_left: float
    a_out: complex
    a_in: complex
    log_scale: float = 0.0

    def values_at(self, dr: float | complex) -> tuple[complex, complex, float]:
        """(chi, chi', log_scale) at distance dr from the left edge.

        The returned pair is scaled: actual values are exp(log_scale) larger.
        """
        if self.q == 0:
            return (self.a_out + self.a_in * dr, self.a_in, self.log_scale)
        # growth exponent of the outgoing term over dr
        g = -self.q.imag * float(dr)
        m = abs(g)
        phase = 1j * self.q.real * float(dr)
        t_out = self.a_out * cmath.exp(phase + (g - m))
        t_in = self.a_in * cmath.exp(-phase + (-g - m))
        v = t_out + t_in
        dv = 1j * self.q * (t_out - t_in)
        return v, dv, self.log_scale + m


@dataclass(frozen=True)
class LayerSolution:
    """chi(r; k) as per-layer amplitude pairs.

    ``layer_amplitudes`` gives the global-convention coefficients (c_out, c_in)
    with chi = c_out e^{i q r} + c_in e^{-i q r} on each layer; on the
    exterior these are the outgoing/incoming coefficients whose combinations
    form the Jost functions.
    """

    k: complex
    pot: Potential
    scale: PhysicalScale
    layers: tuple[LayerWave, ...]

    @property
    def layer_amplitudes(self) -> tuple[tuple[complex, complex], ...]:
        out = []
        for w in self.layers:
            s = cmath.exp(w.log_scale)
            if w.q == 0:
                # basis {1, r}: constant term re-referenced to the origin
                out.append((s * (w.a_out - w.a_in * w.r_left), s * w.a_in))
            else:
                rot = 1j * w.q * w.r_left
                out.append((s * w.a_out * cmath.exp(-rot), s * w.a_in * cmath.exp(rot)))
        return tuple(out)

    @property
    def exterior_amplitudes(self) -> tuple[complex, complex]:
        """(c_out, c_in) of the exterior layer: the shell's (J3, J4)."""
        return self.layer_amplitudes[-1]


def solve_regular(pot: Potential, scale: PhysicalScale, k: complex) -> LayerSolution:
    """Propagate the regular solution chi(0)=0 across all breakpoints.

    Raises ValueError for k = 0 (the regular solution degenerates to zero
    under the sin(kr) normalization).
    """
    k = complex(k)
    if k == 0:
        raise ValueError("k = 0 is degenerate: sin(kr) vanishes identically")

    q0 = local_wavenumber(pot, scale, k, 0)
    if q0 == 0:
        # energy exactly at the innermost height: chi = r is the regular limit
        first = LayerWave(q=0j, r_left=0.0, a_out=0j, a_in=1 + 0j)
    else:
        half_i = 1 / 2j
        first = LayerWave(q=q0, r_left=0.0, a_out=half_i, a_in=-half_i)

    layers = [first]
    for i, r_i in enumerate(pot.breakpoints):
        prev = layers[-1]
        q = local_wavenumber(pot, scale, k, i + 1)
        if q == prev.q and q != 0:
            # no height change across this breakpoint: shift the reference
            # point multiplicatively instead of re-fitting from (chi, chi'),
            # which would amplify rounding by the layer's growth factor
            dr = r_i - prev.r_left
            g = -q.imag * dr
            m = abs(g)
            phase = 1j * q.real * dr
            layers.append(LayerWave(
                q=q, r_left=r_i,
                a_out=prev.a_out * cmath.exp(phase + (g - m)),
                a_in=prev.a_in * cmath.exp(-phase + (-g - m)),
                log_scale=prev.log_scale + m,
            ))
            continue
        v, dv, ls = prev.values_at(r_i - prev.r_left)
        if q == 0:
            layers.append(LayerWave(q=0j, r_left=r_i, a_out=v, a_in=dv, log_scale=ls))
        else:
            a_out = (v + dv / (1j * q)) / 2
            a_in = (v - dv / (1j * q)) / 2
            layers.append(LayerWave(q=q, r_left=r_i, a_out=a_out, a_in=a_in, log_scale=ls))
    return LayerSolution(k=k, pot=pot, scale=scale, layers=tuple(layers))


def _evaluate(sol: LayerSolution, r, derivative: int):
    rs = np.asarray(r, dtype=float)
    scalar = rs.ndim == 0
    rs = np.atleast_1d(rs)
    if np.any(rs < 0):
        raise ValueError("radius must be nonnegative")
    out = np.empty(rs.shape, dtype=complex)
    edges = np.asarray(sol.pot.breakpoints)
    idx = np.searchsorted(edges, rs, side="right")
    for layer in range(sol.pot.n_layers):
        mask = idx == layer
        if not mask.any():
            continue
        w = sol.layers[layer]
        dr = rs[mask] - w.r_left
        s = math.exp(w.log_scale)
        if w.q == 0:
            if derivative == 0:
                out[mask] = s * (w.a_out + w.a_in * dr)
            elif derivative == 1:
                out[mask] = s * w.a_in
            else:
                out[mask] = 0.0
            continue
        e_out = np.exp(1j * w.q * dr)
        e_in = np.exp(-1j * w.q * dr)
        if derivative == 0:
            out[mask] = s * (w.a_out * e_out + w.a_in * e_in)
        elif derivative == 1:
            out[mask] = s * 1j * w.q * (w.a_out * e_out - w.a_in * e_in)
        else:
            out[mask] = s * -(w.q ** 2) * (w.a_out * e_out + w.a_in * e_in)
    return out[0] if scalar else out


def evaluate_chi(sol: LayerSolution, r):
    """chi(r; k), vectorized over r.  Breakpoints evaluate on the right layer
    (the two sides agree by construction)."""
    return _evaluate(sol, r, 0)


def evaluate_chi_derivative(sol: LayerSolution, r):
    """d chi/dr, analytic per layer."""
    return _evaluate(sol, r, 1)


def evaluate_chi_second_derivative(sol: LayerSolution, r):
    """d^2 chi/dr^2 = -q^2 chi per layer; used for residual bookkeeping checks."""
    return _evaluate(sol, r, 2)
