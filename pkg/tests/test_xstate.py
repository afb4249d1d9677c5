"""X-state spectra, measurement entropies and the deficit minimizer."""

import math

import numpy as np
import pytest

import oracles
from spindeficit.errors import NonPhysicalState
from spindeficit.xstate import (
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


def test_xstate_rejects_out_of_range_parameters():
    with pytest.raises(NonPhysicalState):
        XState(r=0.0, s=0.0, c1=1.1, c2=0.0, c3=0.0)
    with pytest.raises(NonPhysicalState):
        XState(r=math.nan, s=0.0, c1=0.0, c2=0.0, c3=0.0)
    # quadrature-scale slack above 1 is accepted
    XState(r=1.0 + 1e-10, s=0.0, c1=0.0, c2=0.0, c3=0.0)


def test_direction_must_be_unit():
    with pytest.raises(ValueError):
        MeasurementDirection(1.0, 1.0, 0.0)
    d = MeasurementDirection.from_angles(0.3, 1.1)
    assert abs(d.z1**2 + d.z2**2 + d.z3**2 - 1.0) < 1e-12


def test_spectrum4_validation():
    with pytest.raises(NonPhysicalState):
        Spectrum4.from_values([0.5, 0.5, 0.1, -0.1])
    with pytest.raises(NonPhysicalState):
        Spectrum4.from_values([0.5, 0.5, 0.5, 0.5])
    s = Spectrum4.from_values([0.1, 0.4, 0.2, 0.3])
    assert s.values == (0.4, 0.3, 0.2, 0.1)
    # tiny negatives are clamped to zero
    s = Spectrum4.from_values([1.0 + 5e-11, -5e-11, 0.0, 0.0])
    assert min(s.values) == 0.0


def test_entropy_conventions():
    assert entropy(Spectrum4.from_values([0.25] * 4)) == pytest.approx(2.0, abs=1e-14)
    assert entropy(Spectrum4.from_values([1.0, 0.0, 0.0, 0.0])) == 0.0
    assert entropy(Spectrum4.from_values([0.5, 0.5, 0.0, 0.0])) == pytest.approx(1.0, abs=1e-14)


def test_eigenvalues_match_dense_diagonalization():
    # general r != s states, closed form against eigvalsh
    rng = np.random.default_rng(11)
    for _ in range(200):
        state = oracles.random_x_state(rng)
        closed = np.array(list(eigenvalues(state)))
        dense = oracles.dense_eigenvalues(state)
        assert np.abs(closed - dense).max() < 1e-12


def test_post_measurement_matches_explicit_projectors():
    rng = np.random.default_rng(12)
    for _ in range(200):
        state = oracles.random_x_state(rng)
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        closed = np.array(list(post_measurement_spectrum(state, MeasurementDirection(*v))))
        dense = oracles.projector_spectrum(state, *v)
        assert np.abs(closed - dense).max() < 1e-12


def test_measurement_entropy_symmetries():
    # z3 -> -z3 and sign flips of z1, z2 leave the objective unchanged
    rng = np.random.default_rng(13)
    for _ in range(100):
        state = oracles.random_x_state(rng)
        z1, z2, z3 = rng.standard_normal(3)
        n = math.sqrt(z1 * z1 + z2 * z2 + z3 * z3)
        z1, z2, z3 = z1 / n, z2 / n, z3 / n
        base = measured_entropy(state, MeasurementDirection(z1, z2, z3))
        for flipped in [(z1, z2, -z3), (-z1, z2, z3), (z1, -z2, z3), (-z1, -z2, -z3)]:
            assert abs(measured_entropy(state, MeasurementDirection(*flipped)) - base) < 1e-12


def test_measurement_never_lowers_entropy():
    rng = np.random.default_rng(14)
    for _ in range(500):
        state = oracles.random_x_state(rng)
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        s_rho = entropy(eigenvalues(state))
        assert measured_entropy(state, MeasurementDirection(*v)) >= s_rho - 1e-12


def test_deficit_known_states():
    # maximally mixed: nothing to gain or lose
    d, direction = one_way_deficit(XState(0.0, 0.0, 0.0, 0.0, 0.0))
    assert d == 0.0
    assert direction.z3 == 1.0
    # polarized product state |00><00|
    d, _ = one_way_deficit(XState(1.0, 1.0, 0.0, 0.0, 1.0))
    assert d < 1e-10
    # Bell state (r=s=0, c=(1,-1,1)) is pure with maximal deficit 1
    d, _ = one_way_deficit(XState(0.0, 0.0, 1.0, -1.0, 1.0))
    assert d == pytest.approx(1.0, abs=1e-8)
    # classically correlated mixture of |00> and |11>: a sigma3 measurement
    # reads it out without disturbance
    d, _ = one_way_deficit(XState(0.0, 0.0, 0.0, 0.0, 1.0))
    assert d < 1e-10


def test_deficit_matches_grid_projector_oracle():
    rng = np.random.default_rng(15)
    for _ in range(8):
        state = oracles.random_x_state(rng)
        d_opt, _ = one_way_deficit(state)
        d_grid = oracles.grid_deficit(state)
        assert d_opt >= 0.0
        assert abs(d_opt - d_grid) < 1e-6


def test_deficit_deterministic():
    state = XState(r=0.3, s=-0.2, c1=0.5, c2=-0.4, c3=0.1)
    a = one_way_deficit(state)
    b = one_way_deficit(state)
    assert a[0] == b[0]
    assert (a[1].z1, a[1].z2, a[1].z3) == (b[1].z1, b[1].z2, b[1].z3)


def test_minimizer_options_validation():
    with pytest.raises(ValueError):
        MinimizerOptions(grid_size=1)
    with pytest.raises(ValueError):
        MinimizerOptions(tolerance=0.0)
    # a denser grid must not find a different minimum
    state = XState(r=0.3, s=-0.2, c1=0.5, c2=-0.4, c3=0.1)
    d64, _ = one_way_deficit(state, MinimizerOptions(grid_size=64))
    d128, _ = one_way_deficit(state, MinimizerOptions(grid_size=128))
    assert abs(d64 - d128) < 1e-8
