"""Parameter sweeps of the deficit and its susceptibility.

A sweep fixes one of the chain models, varies a single coupling over a
uniform grid, evaluates the two-spin deficit at every sample and forms the
susceptibility chi = d(deficit)/dx by central differences.  Local maxima
of |chi| mark candidate phase boundaries; validate_extrema checks them
against independently known critical values.

Samples that land exactly on a gap-closing point (SingularIntegrand from
the correlator integrals) are nudged by +1e-6; a sample that stays
singular after the nudge re-raises with the offending x attached.

Every evaluation is independent and deterministic, so rows never depend
on evaluation order or worker count.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import SingularIntegrand
from .models import (
    ExtIsingParams,
    QuadratureOptions,
    XYParams,
    ext_ising_state,
    xy_state,
)
from .xstate import MinimizerOptions, one_way_deficit

__all__ = [
    "SweepSpec",
    "SweepResult",
    "ExtremumMatch",
    "ExtremaReport",
    "deficit_of",
    "sweep_points",
    "evaluate_point",
    "run_sweep",
    "susceptibility",
    "validate_extrema",
]

_NUDGE = 1e-6

_PARAM_ALIASES = {"lambda": "lam", "h": "h", "lam": "lam", "gamma": "gamma"}


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep description.

    model is 'xy' or 'ext_ising'; param is the swept coupling ('h', 'lam'
    or 'gamma', 'lambda' accepted as an alias); the fixed couplings come
    from the remaining fields.  beta only applies to the extended chain.
    """

    model: str
    param: str
    lo: float
    hi: float
    n: int
    gamma: float = 1.0
    delta: float = 0.0
    lam: float = 0.0
    h: float = 0.0
    beta: float = math.inf
    fd_step: float | None = None
    minimizer: MinimizerOptions = field(default_factory=MinimizerOptions)
    quadrature: QuadratureOptions = field(default_factory=QuadratureOptions)

    def __post_init__(self):
        if self.model not in ("xy", "ext_ising"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.param not in _PARAM_ALIASES:
            raise ValueError(f"unknown sweep parameter {self.param!r}")
        object.__setattr__(self, "param", _PARAM_ALIASES[self.param])
        if self.model == "xy" and self.param == "lam":
            raise ValueError("the XY chain has no lambda coupling")
        if self.model == "xy" and not math.isinf(self.beta):
            raise ValueError("the XY chain is defined at T -> 0 only")
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")
        if self.n < 3:
            raise ValueError("need at least 3 samples for central differences")
        if self.fd_step is not None and self.fd_step <= 0:
            raise ValueError("fd_step must be positive")

    def params_at(self, x):
        """Model parameters with the swept coupling set to x."""
        if self.model == "xy":
            base = XYParams(gamma=self.gamma, h=self.h)
        else:
            base = ExtIsingParams(
                gamma=self.gamma, delta=self.delta, lam=self.lam, h=self.h, beta=self.beta
            )
        return replace(base, **{self.param: x})


@dataclass
class SweepResult:
    x: np.ndarray
    deficit: np.ndarray
    chi: np.ndarray
    extrema: list  # (x, chi) at interior strict maxima of |chi|


@dataclass(frozen=True)
class ExtremumMatch:
    critical: float
    extremum: float | None
    distance: float | None
    ok: bool


@dataclass(frozen=True)
class ExtremaReport:
    matches: list
    passed: bool


def deficit_of(params, minimizer=MinimizerOptions(), quadrature=QuadratureOptions()):
    """Deficit of the two-spin reduced state at one model point."""
    if isinstance(params, XYParams):
        state = xy_state(params, quadrature)
    else:
        state = ext_ising_state(params, quadrature)
    return one_way_deficit(state, minimizer)[0]


def sweep_points(spec):
    return np.linspace(spec.lo, spec.hi, spec.n)


def evaluate_point(spec, x):
    """(actual_x, deficit) at one sample, nudging off exact critical points."""
    try:
        return x, deficit_of(spec.params_at(x), spec.minimizer, spec.quadrature)
    except SingularIntegrand:
        pass
    nudged = x + _NUDGE
    try:
        return nudged, deficit_of(spec.params_at(nudged), spec.minimizer, spec.quadrature)
    except SingularIntegrand as err:
        err.x = x
        raise


def _central_chi(x, deficit):
    chi = np.full_like(deficit, np.nan)
    chi[1:-1] = (deficit[2:] - deficit[:-2]) / (x[2:] - x[:-2])
    return chi


def find_extrema(x, chi, floor):
    """Interior strict local maxima of |chi| above the noise floor."""
    mag = np.abs(chi)
    out = []
    for i in range(1, len(chi) - 1):
        trio = mag[i - 1 : i + 2]
        if np.isnan(trio).any():
            continue
        if mag[i] > mag[i - 1] and mag[i] > mag[i + 1] and mag[i] > floor:
            out.append((float(x[i]), float(chi[i])))
    return out


def run_sweep(spec, evaluations=None):
    """Sweep the deficit; evaluations can inject precomputed (x, deficit) pairs."""
    if evaluations is None:
        evaluations = [evaluate_point(spec, x) for x in sweep_points(spec)]
    x = np.array([e[0] for e in evaluations])
    deficit = np.array([e[1] for e in evaluations])

    if spec.fd_step is None:
        chi = _central_chi(x, deficit)
    else:
        chi = np.full_like(deficit, np.nan)
        for i in range(1, spec.n - 1):
            chi[i] = susceptibility(
                spec.params_at(x[i]), spec.param, spec.fd_step, spec.minimizer, spec.quadrature
            )

    step = (spec.hi - spec.lo) / (spec.n - 1)
    floor = 10.0 * spec.minimizer.tolerance / step
    return SweepResult(x=x, deficit=deficit, chi=chi, extrema=find_extrema(x, chi, floor))


def susceptibility(params, param, step, minimizer=MinimizerOptions(), quadrature=QuadratureOptions()):
    """Central-difference d(deficit)/d(param) at one model point.

    Both offset points must be non-critical; SingularIntegrand propagates.
    """
    param = _PARAM_ALIASES[param]
    x = getattr(params, param)
    lo = deficit_of(replace(params, **{param: x - step}), minimizer, quadrature)
    hi = deficit_of(replace(params, **{param: x + step}), minimizer, quadrature)
    return (hi - lo) / (2.0 * step)


def validate_extrema(result, critical_values, window):
    """Match each in-range critical value to the nearest |chi| extremum.

    Passes only if every critical value inside the sweep range has an
    extremum within ``window``.  Extra extrema are reported by the sweep
    but do not fail validation.
    """
    lo, hi = float(result.x.min()), float(result.x.max())
    xs = [e[0] for e in result.extrema]
    matches = []
    passed = True
    for c in critical_values:
        if not (lo <= c <= hi):
            continue
        if xs:
            nearest = min(xs, key=lambda v: abs(v - c))
            dist = abs(nearest - c)
            ok = dist <= window
            matches.append(ExtremumMatch(critical=float(c), extremum=nearest, distance=dist, ok=ok))
        else:
            ok = False
            matches.append(ExtremumMatch(critical=float(c), extremum=None, distance=None, ok=False))
        passed = passed and ok
    return ExtremaReport(matches=matches, passed=passed)
