"""Bound chains: slope inversion, exclusion curves, scenario registry."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from gup.bounds import (
    ExclusionBoundary,
    ExperimentScenario,
    RatioBound,
    ScenarioError,
    alpha_bound,
    default_beta0_grid,
    derived_length,
    exclusion_boundary,
    levitation_frequency,
    levitation_ratio_bound,
    literature_bounds,
    load_scenarios,
    nucleon_count,
    optomech_coupling,
    optomech_field,
    optomech_phase_coefficient,
    optomech_ratio_bound,
    ratio_bound_from_fit,
    resolve_scenario,
    slope_coefficients,
    sphere_mass,
    theoretical_slope,
)
from gup.constants import ATOMIC_MASS_UNIT, PLANCK_MOMENTUM_SQ, REDUCED_PLANCK
from gup.dynamics import PendulumConfig
from gup.evfit import confidence_interval, odr_fit


class TestDerivedLength:
    def test_unit_example(self):
        length, sigma = derived_length(2.0 * math.pi, 1.0)
        assert length == pytest.approx(1.0, rel=1e-15)
        assert sigma == 0.0

    def test_doubling_period_quadruples_length(self):
        l1, _ = derived_length(1.7, 9.8)
        l2, _ = derived_length(3.4, 9.8)
        assert l2 == pytest.approx(4.0 * l1, rel=1e-14)

    def test_sigma_propagation(self):
        length, sigma = derived_length(3.0, 9.8, t0_sigma=0.003)
        assert sigma == pytest.approx(2.0 * length * 0.001, rel=1e-14)

    def test_experiment_value(self, timing_series, experiment):
        fit = odr_fit(timing_series)
        length, _ = derived_length(fit.intercept, experiment.gravity)
        assert length == pytest.approx(2.9954, abs=4e-4)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            derived_length(0.0, 9.8)
        with pytest.raises(ValueError):
            derived_length(1.0, 9.8, t0_sigma=-1.0)


class TestSlopeChain:
    def test_frozen_coefficients(self, experiment):
        c0, c1 = slope_coefficients(experiment)
        assert c0 == pytest.approx(0.02419232157288427, rel=1e-13)
        assert c1 == pytest.approx(0.19870528289386327, rel=1e-13)

    def test_zero_ratio_gives_classical_slope(self, experiment):
        c0, _ = slope_coefficients(experiment)
        assert theoretical_slope(experiment, 0.0) == c0

    def test_slope_vanishes_at_coefficient_ratio(self, experiment):
        c0, c1 = slope_coefficients(experiment)
        assert theoretical_slope(experiment, c0 / c1) == pytest.approx(0.0, abs=1e-18)

    def test_ratio_bound_round_trip(self, timing_series, experiment):
        fit = odr_fit(timing_series)
        bound = ratio_bound_from_fit(fit, experiment, level=0.95)
        s_lo, s_hi = confidence_interval(fit, "slope", 0.95)
        assert theoretical_slope(experiment, bound.upper) == pytest.approx(s_lo, rel=1e-10)
        assert theoretical_slope(experiment, bound.lower) == pytest.approx(s_hi, rel=1e-10)

    def test_ratio_bound_window(self, timing_series, experiment):
        bound = ratio_bound_from_fit(odr_fit(timing_series), experiment)
        assert bound.lower < bound.upper
        assert 0.009 < bound.upper < 0.013

    def test_ratio_bound_orders_endpoints(self):
        with pytest.raises(ValueError):
            RatioBound(lower=1.0, upper=0.5)


class TestAlphaBound:
    def test_pendulum_headline_number(self):
        assert alpha_bound(0.011, 7.32e26) == pytest.approx(0.07, abs=0.01)

    def test_round_trip_on_random_samples(self, rng):
        # beta0 N^-alpha = B inverted back to alpha, 100 draws
        for _ in range(100):
            alpha = rng.uniform(-2.0, 2.0)
            n = 10.0 ** rng.uniform(3.0, 27.0)
            beta0 = 10.0 ** rng.uniform(-4.0, 8.0)
            upper = beta0 * n ** (-alpha)
            recovered = alpha_bound(upper, n, beta0)
            assert recovered == pytest.approx(alpha, rel=1e-12, abs=1e-12)

    def test_unit_beta0_closed_form(self):
        assert alpha_bound(1e6, 1e24) == pytest.approx(-0.25, rel=1e-12)
        assert alpha_bound(1e-2, 1e20) == pytest.approx(0.1, rel=1e-12)

    @pytest.mark.parametrize("kwargs", [
        {"upper": 0.0, "n_particles": 1e6},
        {"upper": 1.0, "n_particles": 1.0},
        {"upper": 1.0, "n_particles": 1e6, "beta0": 0.0},
    ])
    def test_rejects_degenerate_inputs(self, kwargs):
        with pytest.raises(ValueError):
            alpha_bound(**kwargs)


class TestExclusionBoundary:
    def test_default_grid(self):
        grid = default_beta0_grid()
        assert grid.size == 121
        assert grid[0] == pytest.approx(1e-4, rel=1e-12)
        assert grid[-1] == pytest.approx(1e8, rel=1e-12)
        assert grid[40] == 1.0

    def test_monotone_in_log_beta0(self):
        boundary = exclusion_boundary(0.011, 7.32e26)
        alphas = [alpha for _, alpha in boundary.points]
        assert all(b >= a for a, b in zip(alphas, alphas[1:]))
        assert boundary.excluded_side == "below"

    def test_slope_in_decade_coordinates(self):
        # d alpha / d log10 beta0 = 1 / log10 N
        n = 1e20
        boundary = exclusion_boundary(1.0, n, beta0_grid=[1.0, 10.0])
        (_, a0), (_, a1) = boundary.points
        assert a1 - a0 == pytest.approx(1.0 / 20.0, rel=1e-12)

    def test_custom_grid_round_trip(self, rng):
        n, upper = 5e18, 0.3
        grid = 10.0 ** rng.uniform(-3.0, 7.0, size=25)
        boundary = exclusion_boundary(upper, n, beta0_grid=grid)
        for beta0, alpha in boundary.points:
            assert beta0 * n ** (-alpha) == pytest.approx(upper, rel=1e-12)

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            exclusion_boundary(1.0, 1e6, beta0_grid=[])


class TestNucleonCount:
    def test_uses_atomic_mass_unit(self):
        assert nucleon_count(ATOMIC_MASS_UNIT) == pytest.approx(1.0, rel=1e-15)

    def test_pendulum_bob(self):
        assert nucleon_count(1.22) == pytest.approx(7.347e26, rel=1e-3)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            nucleon_count(0.0)


class TestLevitation:
    def test_gold_sphere_mass(self):
        assert sphere_mass(19300.0, 0.05) == pytest.approx(10.1054, rel=1e-4)

    def test_trap_frequency(self):
        omega = levitation_frequency(19300.0, 3.287e-5, 1000.0)
        assert omega == pytest.approx(36.81, abs=0.01)

    def test_bound_from_damping(self):
        mass = sphere_mass(19300.0, 0.05)
        omega = levitation_frequency(19300.0, 3.287e-5, 1000.0)
        bound = levitation_ratio_bound(mass, omega, 0.1, damping=1.2e-7)
        assert bound.lower == 0.0
        expected = 1.2e-7 * 2.0 * PLANCK_MOMENTUM_SQ / (mass**2 * omega**3 * 0.1**2)
        assert bound.upper == pytest.approx(expected, rel=1e-14)

    def test_averaging_tightens_bound(self):
        kwargs = dict(mass=10.0, omega=36.8, amplitude=0.1, damping=1e-7)
        single = levitation_ratio_bound(n_measurements=1, **kwargs)
        many = levitation_ratio_bound(n_measurements=100, **kwargs)
        assert many.upper == pytest.approx(single.upper / 10.0, rel=1e-13)

    def test_override_wins(self):
        a = levitation_ratio_bound(10.0, 36.8, 0.1, delta_omega_override=1e-4)
        b = levitation_ratio_bound(10.0, 36.8, 0.1, damping=5.0, delta_omega_override=1e-4)
        assert a.upper == b.upper

    def test_requires_resolution_source(self):
        with pytest.raises(ValueError):
            levitation_ratio_bound(10.0, 36.8, 0.1)


class TestOptomech:
    def test_coupling_formula(self):
        lam = optomech_coupling(1e5, 1064e-9, 1e-11, 1e5)
        expected = (4.0 * 1e5 / 1064e-9) * math.sqrt(REDUCED_PLANCK / (1e-11 * 1e5))
        assert lam == pytest.approx(expected, rel=1e-14)

    def test_field_magnitude_preserved(self):
        out = optomech_field(0.5 + 0.2j, 1.3, 10.0, 1e-3, 1e-11, 1e5)
        assert abs(out) == pytest.approx(abs(0.5 + 0.2j), rel=1e-12)

    def test_undeformed_phase(self):
        lam, n_p = 1.3, 10.0
        out = optomech_field(1.0, lam, n_p, 0.0, 1e-11, 1e5)
        expected = complex(math.cos(2 * lam**2 * n_p), -math.sin(2 * lam**2 * n_p))
        assert out == pytest.approx(expected, rel=1e-12)

    def test_deformation_phase_linear_in_beta(self):
        lam, n_p, m, w = 1.3, 10.0, 1e-11, 1e5
        base = optomech_field(1.0, lam, n_p, 0.0, m, w)
        coeff = optomech_phase_coefficient(lam, n_p, m, w)
        for beta in (1e-3, 2e-3):
            rotated = optomech_field(1.0, lam, n_p, beta, m, w)
            extra = np.angle(rotated / base)
            assert extra == pytest.approx(-beta * coeff, rel=1e-9)

    def test_momentum_term_enters_squared(self):
        # the budget adds the two phase magnitudes; p enters as p^2
        lam, n_p, m, w = 0.9, 5.0, 1e-11, 1e5
        c0 = optomech_phase_coefficient(lam, n_p, m, w, p_mean=0.0)
        c1 = optomech_phase_coefficient(lam, n_p, m, w, p_mean=2.0)
        assert c1 - c0 == pytest.approx(2.0 * lam**2 * n_p * 4.0, rel=1e-12)

    def test_ratio_bound_scales_with_resolution(self):
        kwargs = dict(lam=1.3, n_photons=10.0, mass=1e-11, omega=1e5)
        weak = optomech_ratio_bound(1e-3, **kwargs)
        strong = optomech_ratio_bound(1e-6, **kwargs)
        assert weak.upper == pytest.approx(1e3 * strong.upper, rel=1e-12)
        assert strong.lower == 0.0

    def test_rejects_negative_resolution(self):
        with pytest.raises(ValueError):
            optomech_ratio_bound(-1.0, lam=1.0, n_photons=1.0, mass=1.0, omega=1.0)


class TestRegistry:
    def test_bundled_registry_loads(self):
        scenarios = load_scenarios()
        assert len(scenarios) == 5
        kinds = {s.kind for s in scenarios}
        assert kinds == {
            "pendulum-fit", "oscillator-frequency", "levitation", "optomechanical"
        }

    def test_literature_boundary_points_at_unit_strength(self):
        registered = {
            s.label: s for s in literature_bounds() if s.kind == "oscillator-frequency"
        }
        assert len(registered) == 2
        for scenario, expected in zip(
            sorted(registered.values(), key=lambda s: s.n_particles),
            (-0.33, -0.25),
        ):
            upper, n = resolve_scenario(scenario)
            boundary = exclusion_boundary(upper, n)
            at_unit = dict(boundary.points)[1.0]
            assert at_unit == pytest.approx(expected, abs=5e-3)

    def test_levitation_scenario_resolves(self):
        scenario = next(s for s in load_scenarios() if s.kind == "levitation")
        upper, n = resolve_scenario(scenario)
        assert upper > 0.0
        assert n == pytest.approx(nucleon_count(sphere_mass(19300.0, 0.05)), rel=1e-12)
        assert alpha_bound(upper, n) == pytest.approx(0.35, abs=0.01)

    def test_pendulum_scenario_needs_fit(self):
        scenario = next(s for s in load_scenarios() if s.kind == "pendulum-fit")
        with pytest.raises(ScenarioError):
            resolve_scenario(scenario)
        upper, n = resolve_scenario(scenario, RatioBound(0.0, 0.011))
        assert upper == 0.011
        assert n == 7.32e26

    def test_inferred_parameters_are_flagged(self):
        flagged = [s for s in load_scenarios() if s.inferred]
        assert flagged
        for s in flagged:
            for name in s.inferred:
                assert name in s.parameters or name == "n_particles"

    def test_load_from_explicit_path(self, tmp_path):
        doc = {
            "version": 1,
            "scenarios": [{
                "kind": "optomechanical",
                "label": "probe",
                "n_particles": 1e9,
                "parameters": {"ratio_upper": 2.0},
            }],
        }
        path = tmp_path / "registry.json"
        path.write_text(json.dumps(doc))
        scenarios = load_scenarios(str(path))
        assert scenarios[0].label == "probe"
        assert resolve_scenario(scenarios[0]) == (2.0, 1e9)

    @pytest.mark.parametrize("mangle,fragment", [
        (lambda d: d["scenarios"][0].pop("kind"), "missing keys: kind"),
        (lambda d: d["scenarios"][0].update(surprise=1), "unknown keys: surprise"),
        (lambda d: d["scenarios"][0].update(kind="astrology"), "unknown scenario kind"),
        (lambda d: d.pop("scenarios"), "'scenarios'"),
    ])
    def test_validation_names_the_problem(self, tmp_path, mangle, fragment):
        doc = {
            "version": 1,
            "scenarios": [{
                "kind": "optomechanical",
                "label": "probe",
                "n_particles": 1e9,
                "parameters": {"ratio_upper": 2.0},
            }],
        }
        mangle(doc)
        path = tmp_path / "registry.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ScenarioError, match=fragment):
            load_scenarios(str(path))

    def test_error_reports_index(self, tmp_path):
        doc = {"version": 1, "scenarios": [
            {"kind": "optomechanical", "label": "good", "n_particles": 1e9,
             "parameters": {"ratio_upper": 2.0}},
            {"kind": "optomechanical", "label": "bad"},
        ]}
        path = tmp_path / "registry.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ScenarioError, match="#1"):
            load_scenarios(str(path))

    def test_invalid_json_reported(self, tmp_path):
        path = tmp_path / "registry.json"
        path.write_text("{not json")
        with pytest.raises(ScenarioError, match="not valid JSON"):
            load_scenarios(str(path))

    def test_scenario_validation(self):
        with pytest.raises(ScenarioError):
            ExperimentScenario(kind="seance", label="x", n_particles=1.0, parameters={})
        with pytest.raises(ScenarioError):
            ExperimentScenario(
                kind="levitation", label="x", n_particles=0.5, parameters={}
            )
        with pytest.raises(ScenarioError):
            ExperimentScenario(
                kind="levitation", label="x", n_particles=None, parameters={},
                style="dotted",
            )

    def test_missing_levitation_parameter_named(self):
        scenario = ExperimentScenario(
            kind="levitation", label="thin", n_particles=None,
            parameters={"density_kg_m3": 19300.0},
        )
        with pytest.raises(ScenarioError, match="radius_m"):
            resolve_scenario(scenario)

    def test_exclusion_boundary_is_frozen_structure(self):
        boundary = ExclusionBoundary(points=((1.0, 0.5),))
        assert boundary.points == ((1.0, 0.5),)
        with pytest.raises(AttributeError):
            boundary.points = ()
