"""One-way quantum deficit of two adjacent spins in exactly solved chains.

The package computes the two-spin reduced X states of the transverse-field
XY chain and of an extended Ising chain with a three-site interaction,
minimizes the one-way quantum deficit over local measurements, sweeps it
across phase diagrams, and locates quantum critical points independently
through winding numbers and the characteristic equation of the dispersion.
"""

from .errors import (
    ConvergenceFailure,
    GapClosed,
    NonPhysicalState,
    NoRoots,
    SingularIntegrand,
)
from .models import (
    ExtIsingParams,
    QuadratureOptions,
    XYParams,
    adaptive_gauss_legendre,
    ext_ising_correlator,
    ext_ising_dispersion,
    ext_ising_state,
    xy_correlator,
    xy_dispersion,
    xy_state,
)
from .sweep import (
    ExtremaReport,
    ExtremumMatch,
    SweepResult,
    SweepSpec,
    deficit_of,
    run_sweep,
    susceptibility,
    validate_extrema,
)
from .topology import (
    CharacteristicPolynomial,
    CriticalPoint,
    SpectrumSeries,
    characteristic_polynomial,
    characteristic_roots,
    min_gap,
    spectrum,
    winding_curve,
    winding_number,
    winding_vector,
)
from .xstate import (
    MeasurementDirection,
    MinimizerOptions,
    Spectrum4,
    XState,
    eigenvalues,
    entropy,
    measured_entropy,
    one_way_deficit,
    post_measurement_spectrum,
)

__version__ = "0.1.0"
