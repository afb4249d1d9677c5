"""Deficit sweeps, susceptibility and extremum validation."""

import math

import numpy as np
import pytest

import spindeficit.sweep as sweep_mod
from spindeficit.errors import SingularIntegrand
from spindeficit.models import ExtIsingParams, XYParams
from spindeficit.sweep import (
    SweepResult,
    SweepSpec,
    deficit_of,
    evaluate_point,
    run_sweep,
    susceptibility,
    validate_extrema,
)

CASE1 = dict(model="ext_ising", param="h", gamma=1.0, delta=1.0, lam=1.5)


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(model="heisenberg", param="h", lo=0.0, hi=1.0, n=5)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="J", lo=0.0, hi=1.0, n=5)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="lam", lo=0.0, hi=1.0, n=5)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="h", lo=0.0, hi=1.0, n=5, beta=2.0)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="h", lo=1.0, hi=0.0, n=5)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="h", lo=0.0, hi=1.0, n=2)
    with pytest.raises(ValueError):
        SweepSpec(model="xy", param="h", lo=0.0, hi=1.0, n=5, fd_step=0.0)
    # the spelled-out name is accepted for the three-site coupling
    spec = SweepSpec(model="ext_ising", param="lambda", lo=0.0, hi=1.0, n=5)
    assert spec.param == "lam"
    assert spec.params_at(0.7).lam == 0.7


def test_xx_proxy_polarized_phase_is_flat():
    res = run_sweep(SweepSpec(model="xy", param="h", lo=1.05, hi=2.0, n=20, gamma=1e-6))
    assert np.all(res.deficit >= 0.0)
    assert res.deficit.max() < 1e-6
    assert np.nanmax(np.abs(res.chi)) < 1e-4
    assert res.extrema == []


def test_xx_proxy_correlated_phase_is_not():
    res = run_sweep(SweepSpec(model="xy", param="h", lo=0.2, hi=0.9, n=8, gamma=1e-6))
    assert res.deficit.min() > 1e-3


def test_ising_sweep_extrema():
    # the transverse-field Ising deficit peaks just above h=1; the
    # optimal-measurement branch switch near h=0.945 adds a corner, so
    # |chi| has three close extrema, the near-critical one dominant
    res = run_sweep(SweepSpec(model="xy", param="h", lo=0.2, hi=1.8, n=161))
    xs = [x for x, _ in res.extrema]
    assert xs == pytest.approx([0.95, 0.99, 1.05], abs=1e-9)
    assert all(abs(x - 1.0) <= 0.1 for x in xs)
    dominant = max(res.extrema, key=lambda e: abs(e[1]))
    assert dominant[0] == pytest.approx(1.05, abs=1e-9)
    assert dominant[1] == pytest.approx(-1.087998, abs=1e-4)


def test_sweep_rows_sorted_and_deterministic():
    spec = SweepSpec(lo=-0.5, hi=1.0, n=11, **CASE1)
    a = run_sweep(spec)
    b = run_sweep(spec)
    assert np.all(np.diff(a.x) > 0)
    assert np.array_equal(a.x, b.x)
    assert np.array_equal(a.deficit, b.deficit)
    assert np.array_equal(a.chi, b.chi, equal_nan=True)


def test_chi_is_central_difference_on_interior():
    spec = SweepSpec(lo=0.8, hi=1.2, n=5, **CASE1)
    res = run_sweep(spec)
    assert math.isnan(res.chi[0]) and math.isnan(res.chi[-1])
    want = (res.deficit[3] - res.deficit[1]) / (res.x[3] - res.x[1])
    assert res.chi[2] == pytest.approx(want, rel=1e-12)


def test_on_grid_critical_point_is_nudged():
    spec = SweepSpec(model="xy", param="h", lo=0.9, hi=1.1, n=3, gamma=1.0)
    x, d = evaluate_point(spec, 1.0)
    assert x == pytest.approx(1.0 + 1e-6)
    assert d >= 0.0


def test_unresolvable_point_reraises_with_x(monkeypatch):
    def always_singular(params, minimizer, quadrature):
        raise SingularIntegrand("still closed", phi=0.0)

    monkeypatch.setattr(sweep_mod, "deficit_of", always_singular)
    spec = SweepSpec(lo=0.0, hi=1.0, n=3, **CASE1)
    with pytest.raises(SingularIntegrand) as err:
        evaluate_point(spec, 0.25)
    assert err.value.x == 0.25


def test_susceptibility_matches_dense_fit():
    # slope from a quadratic fit through 7 nearby deficits
    p = ExtIsingParams(gamma=1.0, delta=-1.0, lam=1.0, h=1.0)
    chi = susceptibility(p, "lam", 1e-3)
    xs = np.linspace(-3e-3, 3e-3, 7)
    ds = [deficit_of(ExtIsingParams(gamma=1.0, delta=-1.0, lam=1.0 + float(t), h=1.0)) for t in xs]
    slope = np.polyfit(xs, ds, 2)[1]
    assert abs(chi - slope) < 0.05 * abs(slope)
    # the spelled-out parameter name works here too
    assert susceptibility(p, "lambda", 1e-3) == chi


def test_susceptibility_richardson_and_flat_phase():
    a = susceptibility(XYParams(gamma=1.0, h=0.5), "h", 1e-3)
    b = susceptibility(XYParams(gamma=1.0, h=0.5), "h", 5e-4)
    assert abs(a - b) < max(1e-3, 0.05 * abs(b))
    assert abs(susceptibility(XYParams(gamma=1e-6, h=1.5), "h", 1e-3)) < 1e-4


def test_explicit_fd_step():
    spec = SweepSpec(lo=0.8, hi=1.2, n=5, fd_step=1e-3, **CASE1)
    res = run_sweep(spec)
    p = spec.params_at(res.x[2])
    assert res.chi[2] == pytest.approx(susceptibility(p, "h", 1e-3), rel=1e-12)


def test_validate_extrema_direct_cases():
    def fake(extrema, lo=0.0, hi=3.0):
        x = np.linspace(lo, hi, 7)
        return SweepResult(x=x, deficit=np.zeros(7), chi=np.zeros(7), extrema=extrema)

    report = validate_extrema(fake([(0.49, 1.0), (2.52, -1.0)]), [0.5, 2.5], window=0.1)
    assert report.passed
    assert [m.ok for m in report.matches] == [True, True]
    report = validate_extrema(fake([]), [0.5], window=0.1)
    assert not report.passed
    assert report.matches[0].extremum is None
    # out-of-range critical values are ignored
    report = validate_extrema(fake([(0.49, 1.0)]), [0.5, 7.0], window=0.1)
    assert report.passed
    assert len(report.matches) == 1


def test_topological_sweeps_match_critical_points():
    res = run_sweep(SweepSpec(lo=-2.5, hi=3.5, n=301, **CASE1))
    report = validate_extrema(res, [-1.5, 0.5, 2.5], window=0.1)
    assert report.passed
    res = run_sweep(
        SweepSpec(model="ext_ising", param="lam", lo=-2.5, hi=3.0, n=276, gamma=1.0, delta=-1.0, h=1.0)
    )
    golden = (math.sqrt(5.0) + 1.0) / 2.0
    report = validate_extrema(res, [-golden, 0.0, golden - 1.0, 2.0], window=0.1)
    assert report.passed


def test_temperature_smoothing():
    # warming from the ground state damps the peaks and, at T=0.05, barely
    # moves them
    specs = dict(lo=-2.5, hi=3.5, n=201, **CASE1)
    cold = run_sweep(SweepSpec(**specs))
    results = [cold] + [run_sweep(SweepSpec(**specs, beta=b)) for b in (20.0, 5.0, 2.0)]
    maxima = [max(abs(c) for _, c in r.extrema) for r in results]
    assert all(a >= b for a, b in zip(maxima, maxima[1:]))
    for x, _ in results[1].extrema:
        assert min(abs(x - x0) for x0, _ in cold.extrema) <= 0.15


def test_refining_the_grid_keeps_extrema_in_place():
    base = dict(model="ext_ising", param="lam", gamma=1.0, delta=-1.0, h=1.0)
    coarse = run_sweep(SweepSpec(lo=1.4, hi=2.6, n=61, **base))
    fine = run_sweep(SweepSpec(lo=1.4, hi=2.6, n=121, **base))
    spacing = 1.2 / 60
    assert coarse.extrema
    for x, _ in coarse.extrema:
        assert min(abs(x - xf) for xf, _ in fine.extrema) < spacing
