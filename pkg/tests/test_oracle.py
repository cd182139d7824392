"""Cross-check tests: time-domain integration against the algebraic solver,
and the fast-oscillation (no rotating-wave) reference integrator."""

from dataclasses import replace

import numpy as np
import pytest

from magnomech import (BudgetError, ConvergenceError, LinearModel, OracleConfig,
                       build_drift, build_model, default_params,
                       integrate_pre_rwa, rescale_damping, steady_by_integration,
                       steady_covariance)

# Desk-speed integration settings: the rescaled phonon damping closes the
# three-decade timescale gap between the mechanics and the cavity.
FAST = OracleConfig()


@pytest.fixture(scope="module")
def fast_params():
    return rescale_damping(default_params())


class TestOracleConfig:
    def test_rejects_bad_settings(self):
        with pytest.raises(ValueError):
            OracleConfig(horizon_factor=2.0)
        with pytest.raises(ValueError):
            OracleConfig(dt_factor=0.5)
        with pytest.raises(ValueError):
            OracleConfig(dt_factor=0.0)
        with pytest.raises(ValueError):
            OracleConfig(step_budget=10)
        with pytest.raises(ValueError):
            OracleConfig(report_cadence=0)
        with pytest.raises(ValueError):
            OracleConfig(convergence_tol=0.0)


class TestRescaleDamping:
    def test_sets_fraction_of_cavity_decay(self, defaults):
        p = rescale_damping(defaults, fraction=0.1)
        want = 0.1 * defaults.cavity_decay[0]
        assert p.phonon_damp == (want, want)
        assert p.cavity_decay == defaults.cavity_decay


class TestSteadyByIntegration:
    def test_matches_algebraic_solution(self, fast_params):
        model = build_model(fast_params)
        integrated = steady_by_integration(model, FAST)
        direct = steady_covariance(model)
        rel = (np.linalg.norm(integrated.entries - direct.entries)
               / np.linalg.norm(direct.entries))
        assert rel < 1e-6

    def test_deterministic(self, fast_params):
        model = build_model(fast_params)
        first = steady_by_integration(model, FAST)
        second = steady_by_integration(model, FAST)
        assert np.array_equal(first.entries, second.entries)

    def test_trace_file(self, fast_params, tmp_path):
        trace = tmp_path / "relax.csv"
        steady_by_integration(build_model(fast_params), FAST, trace_path=str(trace))
        lines = trace.read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header[0] == "step" and "deriv_norm" in header
        assert len(lines) >= 3
        first = lines[1].split(",")
        assert len(first) == len(header)
        float(first[-1])  # numeric payload

    def test_short_horizon_raises(self, fast_params):
        short = OracleConfig(horizon_factor=5.0)
        with pytest.raises(ConvergenceError):
            steady_by_integration(build_model(fast_params), short)

    def test_small_budget_raises(self, fast_params):
        tight = OracleConfig(step_budget=1000)
        with pytest.raises(BudgetError):
            steady_by_integration(build_model(fast_params), tight)

    def test_zero_injection_decays_to_nothing(self, fast_params):
        # diagnostic mode: with the noise switched off entirely the
        # covariance must relax toward zero, not toward vacuum
        model = LinearModel(drift=build_drift(fast_params),
                            diffusion=np.zeros((12, 12)))
        cm = steady_by_integration(model, FAST)
        assert np.linalg.norm(cm.entries) < 1e-6


class TestPreRwaIntegration:
    def test_decoupled_modes_reproduce_rotating_frame(self, fast_params):
        # without couplings every mode is an independent relaxer; the
        # fast-frame average then matches the rotating-frame answer to
        # integrator precision even with the squeezed drive on
        p = replace(fast_params, cavity_magnon_coupling=(0.0, 0.0),
                    magnomech_coupling=(0.0, 0.0))
        _, rwa_error = integrate_pre_rwa(p, FAST)
        assert rwa_error < 1e-8

    def test_marginal_sideband_resolution_shows_error(self, fast_params):
        # phonon frequencies only 2x the fastest rate: the dropped
        # fast terms leave a visible but still small imprint
        p = default_params(**{"site1.phonon_freq_hz": 6e6,
                              "site2.phonon_freq_hz": 7.2e6})
        p = rescale_damping(p)
        averaged, rwa_error = integrate_pre_rwa(p, FAST)
        assert 1e-4 < rwa_error < 0.1
        assert np.all(np.isfinite(averaged.entries))
