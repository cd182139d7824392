"""Shared helpers for the test suite."""

import numpy as np
import pytest

from magnomech import SystemParams, default_params

TWO_PI = 2.0 * np.pi


def random_params(rng):
    """Physically sensible random parameter set from a seeded generator.

    Rates stay in the regime where the linearized model is stable (the
    drift is passive, hence always stable); frequencies, couplings and the
    drive statistics vary over the ranges the solvers are expected to
    cover.
    """
    kappa_a = TWO_PI * rng.uniform(1e6, 6e6)
    kappa_m = kappa_a * rng.uniform(0.1, 1.0)
    gamma = TWO_PI * rng.uniform(10.0, 1e4)
    g = kappa_a * rng.uniform(0.2, 1.5)
    big_g = kappa_a * rng.uniform(0.05, 0.5)
    wb1 = TWO_PI * rng.uniform(5e6, 15e6)
    wb2 = wb1 * rng.uniform(1.0, 1.5)
    wa = TWO_PI * 10e9
    phonon = (wb1, wb2)
    return SystemParams(
        cavity_freq=(wa, wa),
        magnon_freq=(wa, wa),
        squeeze_freq=(wa, wa),
        phonon_freq=phonon,
        drive_freq=tuple(wa - w for w in phonon),
        cavity_decay=(kappa_a, kappa_a),
        magnon_decay=(kappa_m, kappa_m),
        phonon_damp=(gamma, gamma),
        cavity_magnon_coupling=(g, g),
        magnomech_coupling=(big_g, big_g),
        single_magnon_coupling=(TWO_PI * 0.05, TWO_PI * 0.05),
        squeeze_r=rng.uniform(0.0, 1.2),
        squeeze_phase=rng.uniform(0.0, TWO_PI),
        bath_temp=rng.uniform(0.0, 0.15),
    )


@pytest.fixture
def defaults():
    """Parameter set at the built-in operating point."""
    return default_params()


@pytest.fixture
def rng():
    """Deterministic generator for property-style loops."""
    return np.random.default_rng(20260821)
