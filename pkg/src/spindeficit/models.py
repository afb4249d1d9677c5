"""Thermodynamic-limit two-spin correlators of the chain models.

Two Hamiltonians are covered, each with its own printed sign convention
(the conventions are intentionally not reconciled):

* the anisotropic XY chain in a transverse field, at T -> 0, with
  dispersion omega(phi)^2 = (gamma sin phi)^2 + (h + cos phi)^2 and

      G_l = -(1/pi) Int_0^pi dphi [cos(l phi)(h + cos phi)
                                   - gamma sin(l phi) sin phi] / omega(phi)

* the extended (three-site XZX+YZY) Ising chain at inverse temperature
  beta, with

      Y(phi) = gamma sin phi + lambda delta sin 2phi
      Z(phi) = lambda cos 2phi + cos phi - h
      omega(phi)^2 = Y^2 + Z^2,  Theta(phi) = atan2(Y, Z)
      G_l = -(1/pi) Int_0^pi dphi tanh(beta omega) cos(l phi - Theta)

  Y and Z are the Bogoliubov-de Gennes components used by the topology
  module, so the singular set of these integrals is exactly the set of
  topological transition couplings.  (The field enters the two kernels
  with opposite signs; at lambda = 0 the deficit cannot tell, since the
  relabeling only flips r, s and swaps c1 with c2.)  Theta uses the
  two-argument arctangent: Z changes sign along the integration range
  for most couplings and the principal branch would put 2 pi jumps into
  the integrand.

Both models fill the X-state Bloch parameters the same way:
r = s = G_0, c1 = G_-1, c2 = G_+1, c3 = G_0^2 - G_1 G_-1.

beta = math.inf is the exact T -> 0 sentinel: the tanh factor is replaced
by 1 in a separate branch, never evaluated at infinity.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import SingularIntegrand
from .xstate import XState

__all__ = [
    "XYParams",
    "ExtIsingParams",
    "QuadratureOptions",
    "xy_dispersion",
    "ext_ising_dispersion",
    "xy_integrand",
    "ext_ising_integrand",
    "xy_correlator",
    "xy_state",
    "ext_ising_correlator",
    "ext_ising_state",
    "adaptive_gauss_legendre",
]


@dataclass(frozen=True)
class XYParams:
    """Anisotropy gamma and transverse field h of the XY chain (T -> 0 only)."""

    gamma: float
    h: float


@dataclass(frozen=True)
class ExtIsingParams:
    """Couplings of the extended Ising chain.

    lam scales the three-site term, delta its anisotropy; beta = math.inf
    selects the ground state exactly.
    """

    gamma: float
    delta: float
    lam: float
    h: float
    beta: float = math.inf

    def __post_init__(self):
        if not (self.beta > 0.0):
            raise ValueError("beta must be positive (math.inf for T -> 0)")


@dataclass(frozen=True)
class QuadratureOptions:
    abs_tol: float = 1e-10
    max_panels: int = 4096

    def __post_init__(self):
        if self.abs_tol <= 0 or self.max_panels < 1:
            raise ValueError("abs_tol must be positive and max_panels >= 1")


_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)
# Grid used only to detect an exactly-closed gap before integrating.
_SINGULARITY_GRID = np.linspace(0.0, np.pi, 2049)
_OMEGA_FLOOR = 1e-12
# Panels narrower than ~pi * 2^-60 cannot reduce the residual of a bounded
# jump any further in double precision.
_MAX_DEPTH = 60


def _panel_integrals(f, lo, hi):
    half = 0.5 * (hi - lo)
    x = 0.5 * (lo + hi)[:, None] + half[:, None] * _NODES[None, :]
    return half * (f(x.ravel()).reshape(x.shape) @ _WEIGHTS)


def adaptive_gauss_legendre(f, a, b, opts=QuadratureOptions()):
    """Integrate a vectorized callable with bisected 15-point panels.

    A panel is accepted once one bisection changes its estimate by less
    than the tolerance share proportional to its width; the panel budget
    (and a depth cap at floating-point resolution) stops refinement around
    bounded discontinuities.
    """
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    coarse = _panel_integrals(f, lo, hi)
    total = 0.0
    n_panels = 1
    depth = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = _panel_integrals(f, lo, mid)
        right = _panel_integrals(f, mid, hi)
        fine = left + right
        share = opts.abs_tol * (hi - lo) / (b - a)
        done = np.abs(fine - coarse) <= share
        depth += 1
        if depth >= _MAX_DEPTH or n_panels >= opts.max_panels:
            done[:] = True
        total += fine[done].sum()
        keep = ~done
        n_panels += int(keep.sum())
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    return float(total)


def xy_dispersion(params, phi):
    phi = np.asarray(phi, dtype=float)
    return np.hypot(params.gamma * np.sin(phi), params.h + np.cos(phi))


def ext_ising_dispersion(params, phi):
    phi = np.asarray(phi, dtype=float)
    y = params.gamma * np.sin(phi) + params.lam * params.delta * np.sin(2.0 * phi)
    z = params.lam * np.cos(2.0 * phi) + np.cos(phi) - params.h
    return np.hypot(y, z)


def _check_gap(params, dispersion):
    omega = dispersion(params, _SINGULARITY_GRID)
    k = int(np.argmin(omega))
    if omega[k] < _OMEGA_FLOOR:
        raise SingularIntegrand(
            f"dispersion vanishes at phi = {_SINGULARITY_GRID[k]!r} for {params}",
            phi=float(_SINGULARITY_GRID[k]),
        )


def xy_integrand(params, l):
    gamma, h = params.gamma, params.h

    def f(phi):
        a = h + np.cos(phi)
        b = gamma * np.sin(phi)
        omega = np.maximum(np.hypot(a, b), 1e-300)
        return -(np.cos(l * phi) * a - np.sin(l * phi) * b) / (np.pi * omega)

    return f


def ext_ising_integrand(params, l):
    gamma, delta, lam, h, beta = params.gamma, params.delta, params.lam, params.h, params.beta
    cold = math.isinf(beta)

    def f(phi):
        y = gamma * np.sin(phi) + lam * delta * np.sin(2.0 * phi)
        z = lam * np.cos(2.0 * phi) + np.cos(phi) - h
        theta = np.arctan2(y, z)
        amp = 1.0 if cold else np.tanh(beta * np.hypot(y, z))
        return -amp * np.cos(l * phi - theta) / np.pi

    return f


def xy_correlator(params, l, opts=QuadratureOptions()):
    """G_l of the XY chain for l in {-1, 0, 1}."""
    if l not in (-1, 0, 1):
        raise ValueError(f"l must be -1, 0 or 1, got {l!r}")
    _check_gap(params, xy_dispersion)
    return adaptive_gauss_legendre(xy_integrand(params, l), 0.0, np.pi, opts)


def ext_ising_correlator(params, l, opts=QuadratureOptions()):
    """G_l of the extended Ising chain for l in {-1, 0, 1}.

    Only the beta = inf branch can hit a genuine singularity; at finite
    beta the tanh factor kills the gap-closing point and no error is
    raised.
    """
    if l not in (-1, 0, 1):
        raise ValueError(f"l must be -1, 0 or 1, got {l!r}")
    if math.isinf(params.beta):
        _check_gap(params, ext_ising_dispersion)
    return adaptive_gauss_legendre(ext_ising_integrand(params, l), 0.0, np.pi, opts)


def _state_from_correlators(g0, gm1, gp1):
    return XState(r=g0, s=g0, c1=gm1, c2=gp1, c3=g0 * g0 - gp1 * gm1)


def xy_state(params, opts=QuadratureOptions()):
    """Two-adjacent-spin reduced X state of the XY chain ground state."""
    g0 = xy_correlator(params, 0, opts)
    gm1 = xy_correlator(params, -1, opts)
    gp1 = xy_correlator(params, 1, opts)
    return _state_from_correlators(g0, gm1, gp1)


def ext_ising_state(params, opts=QuadratureOptions()):
    """Two-adjacent-spin reduced X state of the extended Ising chain at beta."""
    g0 = ext_ising_correlator(params, 0, opts)
    gm1 = ext_ising_correlator(params, -1, opts)
    gp1 = ext_ising_correlator(params, 1, opts)
    return _state_from_correlators(g0, gm1, gp1)
