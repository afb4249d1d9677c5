"""Two-qubit X states and the one-way quantum deficit.

An X state is parameterized in the Bloch form

    rho = (1/4) [ I (x) I + r sigma3 (x) I + s I (x) sigma3
                  + sum_n c_n sigma_n (x) sigma_n ],        n = 1, 2, 3,

which covers every two-adjacent-spin reduced state produced by the chain
models in :mod:`spindeficit.models`.  The one-way deficit is the minimum,
over von Neumann measurements on the second spin, of the entropy increase
caused by the measurement.  A measurement direction is the unit vector
(z1, z2, z3) of the measured spin component; only z1**2, z2**2 and the
sign-symmetric z3 enter the post-measurement spectrum, so the search
domain reduces to the octant z1, z2, z3 >= 0.

All entropies are base 2.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import minimize

from .errors import ConvergenceFailure, NonPhysicalState

__all__ = [
    "XState",
    "MeasurementDirection",
    "Spectrum4",
    "MinimizerOptions",
    "eigenvalues",
    "entropy",
    "post_measurement_spectrum",
    "measured_entropy",
    "one_way_deficit",
]

# Bloch parameters may exceed the exact bound by quadrature roundoff.
_BOUND_SLACK = 1e-9
# Eigenvalue clamp: anything in [-1e-10, 0) is treated as 0.
_NEG_TOL = 1e-10


@dataclass(frozen=True)
class XState:
    """Bloch parameters (r, s, c1, c2, c3) of a two-qubit X state."""

    r: float
    s: float
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("r", "s", "c1", "c2", "c3"):
            v = getattr(self, name)
            if not math.isfinite(v) or abs(v) > 1.0 + _BOUND_SLACK:
                raise NonPhysicalState(f"|{name}| = {v!r} exceeds 1")


@dataclass(frozen=True)
class MeasurementDirection:
    """Unit vector (z1, z2, z3) of the measured spin component on site b."""

    z1: float
    z2: float
    z3: float

    def __post_init__(self):
        norm = math.sqrt(self.z1**2 + self.z2**2 + self.z3**2)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"direction has norm {norm!r}, expected 1")

    @classmethod
    def from_angles(cls, theta, phi):
        return cls(
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        )


@dataclass(frozen=True)
class Spectrum4:
    """Four eigenvalues sorted in descending order."""

    values: tuple

    @classmethod
    def from_values(cls, values):
        vals = np.sort(np.asarray(values, dtype=float))[::-1]
        if vals[-1] < -_NEG_TOL:
            raise NonPhysicalState(f"negative eigenvalue {vals[-1]!r}")
        if abs(vals.sum() - 1.0) > 1e-12:
            raise NonPhysicalState(f"eigenvalues sum to {vals.sum()!r}")
        return cls(tuple(np.maximum(vals, 0.0)))

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class MinimizerOptions:
    """Knobs for the deficit minimizer: grid seed size, objective tolerance."""

    grid_size: int = 64
    tolerance: float = 1e-10
    max_evaluations: int = 4000

    def __post_init__(self):
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def eigenvalues(state):
    """Closed-form spectrum of the X-state density matrix.

    The inner 2x2 block gives (1 - c3 +- sqrt((r-s)^2 + (c1+c2)^2)) / 4 and
    the outer block (1 + c3 +- sqrt((r+s)^2 + (c1-c2)^2)) / 4.
    """
    inner = math.hypot(state.r - state.s, state.c1 + state.c2)
    outer = math.hypot(state.r + state.s, state.c1 - state.c2)
    return Spectrum4.from_values(
        [
            (1.0 - state.c3 + inner) / 4.0,
            (1.0 - state.c3 - inner) / 4.0,
            (1.0 + state.c3 + outer) / 4.0,
            (1.0 + state.c3 - outer) / 4.0,
        ]
    )


def entropy(spectrum):
    """Base-2 von Neumann entropy of a Spectrum4, with 0*log0 = 0."""
    p = np.asarray(spectrum.values if isinstance(spectrum, Spectrum4) else spectrum)
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum())


def _post_measurement_probs(state, z1, z2, z3):
    """Spectrum of sum_k (I (x) P_k) rho (I (x) P_k), vectorized over z arrays."""
    t1 = (state.c1 * z1) ** 2 + (state.c2 * z2) ** 2
    lo = np.sqrt((state.r - state.c3 * z3) ** 2 + t1)
    hi = np.sqrt((state.r + state.c3 * z3) ** 2 + t1)
    sz = state.s * z3
    return (
        0.25 * (1.0 - sz + lo),
        0.25 * (1.0 - sz - lo),
        0.25 * (1.0 + sz + hi),
        0.25 * (1.0 + sz - hi),
    )


def post_measurement_spectrum(state, direction):
    """Spectrum after measuring the (z1, z2, z3) spin component on site b."""
    w = _post_measurement_probs(state, direction.z1, direction.z2, direction.z3)
    return Spectrum4.from_values(w)


def measured_entropy(state, direction):
    return entropy(post_measurement_spectrum(state, direction))


def _entropy_of_angles(state, theta, phi):
    """Measurement entropy on a grid of polar/azimuthal angles (base 2)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    w = _post_measurement_probs(state, st * np.cos(phi), st * np.sin(phi), np.cos(theta))
    out = np.zeros(np.broadcast(theta, phi).shape)
    for wk in w:
        wk = np.maximum(wk, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.where(wk > 0.0, wk * np.log2(np.where(wk > 0.0, wk, 1.0)), 0.0)
        out -= term
    return out


def one_way_deficit(state, opts=MinimizerOptions()):
    """Minimal measurement-induced entropy increase on site b.

    Returns ``(deficit, argmin_direction)``.  The objective is seeded with a
    uniform grid over the octant (theta, phi) in [0, pi/2]^2 and refined with
    a derivative-free simplex; symmetry of the post-measurement spectrum
    under z3 -> -z3 and sign flips of z1, z2 makes the octant exhaustive.
    """
    s_rho = entropy(eigenvalues(state))

    if state.r == 0.0 and state.s == 0.0 and state.c1 == 0.0 and state.c2 == 0.0 and state.c3 == 0.0:
        # Maximally mixed: every direction is optimal, nothing to minimize.
        return 0.0, MeasurementDirection(0.0, 0.0, 1.0)

    n = opts.grid_size
    theta = np.linspace(0.0, np.pi / 2.0, n)
    phi = np.linspace(0.0, np.pi / 2.0, n)
    grid = _entropy_of_angles(state, theta[:, None], phi[None, :])
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    grid_min = float(grid[i, j])

    res = minimize(
        lambda x: float(_entropy_of_angles(state, x[0], x[1])),
        x0=[theta[i], phi[j]],
        method="Nelder-Mead",
        options={
            "xatol": 1e-9,
            "fatol": opts.tolerance,
            "maxfev": opts.max_evaluations,
        },
    )
    refined = float(res.fun)
    if refined > grid_min + 100.0 * opts.tolerance:
        raise ConvergenceFailure(
            f"simplex refinement ended at {refined!r}, above grid seed {grid_min!r}"
        )

    if refined <= grid_min:
        best, angles = refined, res.x
    else:
        best, angles = grid_min, (theta[i], phi[j])
    deficit = best - s_rho
    if deficit < -1e-9:
        raise ConvergenceFailure(
            f"deficit {deficit!r} below zero beyond tolerance; measurement "
            "entropy should never drop below the state entropy"
        )
    return max(deficit, 0.0), MeasurementDirection.from_angles(float(angles[0]), float(angles[1]))
