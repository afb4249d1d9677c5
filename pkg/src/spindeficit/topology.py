"""Criticality diagnostics of the extended Ising chain.

The Bogoliubov kernel of the chain traces the planar loop

    Y(phi) = lam * delta * sin 2phi + gamma * sin phi
    Z(phi) = lam * cos 2phi + cos phi - h,          phi in [-pi, pi),

whose winding about the origin labels the gapped phases; the dispersion is
omega = sqrt(Y^2 + Z^2).  Phase boundaries are where the loop touches the
origin, i.e. where

    g(zeta) = lam [ (1+delta) zeta^2 + (1-delta) zeta^-2 ] / 2
              + [ (1+gamma) zeta + (1-gamma) zeta^-1 ] / 2 - h,

the Laurent polynomial with g(e^{i phi}) = Z(phi) + i Y(phi), has a root
on the unit circle.  g is linear in both h and lam, so critical values of
either parameter fall out of a one-dimensional scan over the circle.

Functions here take ExtIsingParams; beta never enters (the winding and the
characteristic equation are ground-state notions).
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import GapClosed, NoRoots

__all__ = [
    "winding_vector",
    "winding_curve",
    "winding_number",
    "SpectrumSeries",
    "spectrum",
    "CharacteristicPolynomial",
    "characteristic_polynomial",
    "CriticalPoint",
    "characteristic_roots",
    "min_gap",
]

_GAP_FLOOR = 1e-8


def winding_vector(params, phi):
    phi = np.asarray(phi, dtype=float)
    y = params.lam * params.delta * np.sin(2.0 * phi) + params.gamma * np.sin(phi)
    z = params.lam * np.cos(2.0 * phi) + np.cos(phi) - params.h
    return y, z


def _winding_derivatives(params, phi):
    dy = 2.0 * params.lam * params.delta * np.cos(2.0 * phi) + params.gamma * np.cos(phi)
    dz = -2.0 * params.lam * np.sin(2.0 * phi) - np.sin(phi)
    return dy, dz


def winding_curve(params, n_nodes=4096):
    """(phi, Y, Z) on the uniform periodic grid used for the winding integral.

    The grid runs from -pi inclusive to +pi exclusive so that phi = 0 and
    phi = -pi (the zeta = +-1 gap-closing wavevectors) are exact nodes.
    """
    phi = -np.pi + 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    y, z = winding_vector(params, phi)
    return phi, y, z


def winding_number(params, n_nodes=4096):
    """Integer winding of the (Y, Z) loop about the origin.

    Trapezoidal rule on the periodic grid with analytic derivatives; the
    raw integral must land within 0.01 of an integer, otherwise the loop
    passes too close to the origin to resolve and GapClosed is raised, as
    it is when a node itself sits within 1e-8 of the origin.
    """
    phi, y, z = winding_curve(params, n_nodes)
    r2 = y * y + z * z
    if float(np.min(r2)) < _GAP_FLOOR**2:
        k = int(np.argmin(r2))
        raise GapClosed(f"loop passes within {_GAP_FLOOR} of origin at phi = {phi[k]!r}")
    dy, dz = _winding_derivatives(params, phi)
    raw = float(np.sum((y * dz - z * dy) / r2)) / n_nodes
    nu = round(raw)
    if abs(raw - nu) >= 0.01:
        raise GapClosed(f"winding integral {raw!r} is not close to an integer")
    return int(nu)


@dataclass(frozen=True)
class SpectrumSeries:
    """Dispersion sampled on the exact finite-chain wavevector grid."""

    phi: np.ndarray
    omega: np.ndarray

    @property
    def omega_plus(self):
        return self.omega

    @property
    def omega_minus(self):
        return -self.omega


def spectrum(params, L):
    """Both +-omega branches at phi = 2 pi m / L, m = -(L-1)/2, ..., (L-1)/2.

    m is half-odd-integer for even L and integer for odd L; phi = 0 is a
    wavevector only for odd L.
    """
    if L < 1:
        raise ValueError("L must be a positive integer")
    m = np.arange(L) - (L - 1) / 2.0
    phi = 2.0 * np.pi * m / L
    y, z = winding_vector(params, phi)
    return SpectrumSeries(phi=phi, omega=np.hypot(y, z))


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Laurent coefficients of g(zeta), ordered zeta^-2 ... zeta^2."""

    coefficients: tuple

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        c = self.coefficients
        return c[0] / zeta**2 + c[1] / zeta + c[2] + c[3] * zeta + c[4] * zeta**2


def characteristic_polynomial(params):
    return CharacteristicPolynomial(
        (
            params.lam * (1.0 - params.delta) / 2.0,
            (1.0 - params.gamma) / 2.0,
            -params.h,
            (1.0 + params.gamma) / 2.0,
            params.lam * (1.0 + params.delta) / 2.0,
        )
    )


@dataclass(frozen=True)
class CriticalPoint:
    """A critical parameter value and the unit-circle root producing it."""

    value: float
    zeta: complex
    theta: float


def _free_parts(params, free):
    """Split g = A * p + B with p the free parameter; returns callables of theta."""
    base = characteristic_polynomial(params)
    if free == "h":
        with_zeroed = CharacteristicPolynomial(
            (base.coefficients[0], base.coefficients[1], 0.0, base.coefficients[3], base.coefficients[4])
        )
        direction = CharacteristicPolynomial((0.0, 0.0, -1.0, 0.0, 0.0))
    elif free == "lam":
        with_zeroed = CharacteristicPolynomial(
            (0.0, base.coefficients[1], base.coefficients[2], base.coefficients[3], 0.0)
        )
        direction = CharacteristicPolynomial(
            ((1.0 - params.delta) / 2.0, 0.0, 0.0, 0.0, (1.0 + params.delta) / 2.0)
        )
    else:
        raise ValueError(f"free parameter must be 'h' or 'lam', got {free!r}")
    return with_zeroed, direction


def characteristic_roots(params, free, n_scan=10000, imag_tol=1e-10, dedup_tol=1e-8):
    """All real critical values of the free parameter, ascending.

    Scans zeta = e^{i theta} over theta in [0, pi] (the conjugate half is
    redundant: g has real coefficients), solves the linear equation
    g = A p + B = 0 for the free parameter p at each sample, polishes sign
    changes of Im p with bracketed root finding, and keeps solutions whose
    imaginary part is below ``imag_tol``.  Candidates closer than
    ``dedup_tol`` collapse to one critical point.
    """
    fixed, direction = _free_parts(params, free)
    theta = np.linspace(0.0, np.pi, n_scan)
    zeta = np.exp(1j * theta)
    a = direction(zeta)
    if float(np.max(np.abs(a))) < 1e-14:
        raise NoRoots(f"g does not depend on {free!r} for {params}")
    b = fixed(zeta)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(np.abs(a) > 1e-13, -b / np.where(np.abs(a) > 1e-13, a, 1.0), np.nan + 0j)

    def imag_p(t):
        zt = cmath.exp(1j * t)
        at = complex(direction(zt))
        if abs(at) < 1e-13:
            return math.nan
        return (-complex(fixed(zt)) / at).imag

    candidates = []
    q = p.imag
    for k in range(n_scan):
        if np.isfinite(q[k]) and abs(q[k]) < imag_tol:
            candidates.append((float(p[k].real), float(theta[k])))
    for k in range(n_scan - 1):
        qa, qb = q[k], q[k + 1]
        if not (np.isfinite(qa) and np.isfinite(qb)):
            continue
        if qa == 0.0 or qb == 0.0 or qa * qb > 0.0:
            continue
        t = brentq(imag_p, theta[k], theta[k + 1], xtol=1e-15)
        zt = cmath.exp(1j * t)
        at = complex(direction(zt))
        if abs(at) < 1e-13:
            continue
        val = -complex(fixed(zt)) / at
        if abs(val.imag) < imag_tol:
            candidates.append((float(val.real), float(t)))

    candidates.sort()
    roots = []
    for value, t in candidates:
        if roots and abs(value - roots[-1].value) < dedup_tol:
            continue
        roots.append(CriticalPoint(value=value, zeta=cmath.exp(1j * t), theta=t))
    return roots


def min_gap(params, n_grid=4096):
    """(phi, omega) at the continuous-phi minimum of the dispersion.

    Dense-grid seed refined with bounded scalar minimization of omega^2
    (smooth through a gap-closing point, unlike omega itself).
    """
    phi = np.linspace(-np.pi, np.pi, n_grid + 1)
    y, z = winding_vector(params, phi)
    r2 = y * y + z * z
    k = int(np.argmin(r2))
    lo = phi[max(k - 1, 0)]
    hi = phi[min(k + 1, n_grid)]

    def omega2(t):
        yt, zt = winding_vector(params, t)
        return float(yt * yt + zt * zt)

    res = minimize_scalar(omega2, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    if res.fun <= r2[k]:
        return float(res.x), math.sqrt(max(float(res.fun), 0.0))
    return float(phi[k]), math.sqrt(float(r2[k]))
