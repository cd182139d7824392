"""Linear-algebra kernel tests: Lyapunov solver and covariance integrator."""

import numpy as np
import pytest

from magnomech import (BudgetError, DivergenceError, StabilityError,
                       eigenvalues, propagate_covariance, rk4_step,
                       solve_lyapunov, spectral_abscissa)


def random_hurwitz(rng, n):
    """Random stable matrix: random entries shifted left of the axis."""
    a = rng.standard_normal((n, n))
    shift = float(np.max(np.abs(np.linalg.eigvals(a).real))) + rng.uniform(0.5, 2.0)
    return a - shift * np.eye(n)


def random_psd(rng, n):
    b = rng.standard_normal((n, n))
    return b @ b.T


class TestEigenvalues:
    def test_diagonal(self):
        vals = eigenvalues(np.diag([-1.0, -3.0, 2.0]))
        assert sorted(vals.real) == pytest.approx([-3.0, -1.0, 2.0])

    def test_matches_characteristic_polynomial(self, rng):
        for _ in range(20):
            a = rng.standard_normal((5, 5))
            got = np.sort_complex(eigenvalues(a))
            want = np.sort_complex(np.roots(np.poly(a)))
            assert np.allclose(got, want, rtol=1e-7, atol=1e-7)

    def test_spectral_abscissa(self):
        a = np.array([[-2.0, 10.0], [0.0, -0.5]])
        assert spectral_abscissa(a) == pytest.approx(-0.5)
        assert isinstance(spectral_abscissa(a), float)


class TestSolveLyapunov:
    def test_scalar_damping(self, rng):
        # A = -I/2 makes the equation C = Q directly.
        q = random_psd(rng, 4)
        c = solve_lyapunov(-0.5 * np.eye(4), q)
        assert np.allclose(c, q, rtol=1e-12, atol=1e-12)

    def test_diagonal_rates(self):
        c = solve_lyapunov(np.diag([-1.0, -2.0]), np.eye(2))
        assert np.allclose(c, np.diag([0.5, 0.25]), rtol=1e-13)

    def test_scale_covariance(self, rng):
        # Scaling A and Q together leaves the solution unchanged.
        a = random_hurwitz(rng, 6)
        q = random_psd(rng, 6)
        base = solve_lyapunov(a, q)
        for scale in (1e-8, 1e-3, 1e3, 1e8):
            scaled = solve_lyapunov(scale * a, scale * q)
            assert np.allclose(scaled, base, rtol=1e-9)

    def test_residual_property(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 9))
            a = random_hurwitz(rng, n)
            q = random_psd(rng, n)
            c = solve_lyapunov(a, q)
            assert np.allclose(c, c.T)
            residual = np.linalg.norm(a @ c + c @ a.T + q)
            assert residual <= 1e-10 * max(np.linalg.norm(q), 1e-300)

    def test_rejects_unstable(self):
        with pytest.raises(StabilityError):
            solve_lyapunov(np.eye(3), np.eye(3))

    def test_rejects_marginal(self):
        a = np.array([[0.0, 1.0], [-1.0, 0.0]])  # purely rotational
        with pytest.raises(StabilityError):
            solve_lyapunov(a, np.eye(2))

    def test_rejects_asymmetric_q(self):
        q = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError):
            solve_lyapunov(-np.eye(2), q)

    def test_rejects_nonfinite(self):
        a = -np.eye(2)
        a[0, 1] = np.nan
        with pytest.raises(ValueError):
            solve_lyapunov(a, np.eye(2))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            solve_lyapunov(-np.eye(3), np.eye(2))


class TestIntegrator:
    def test_pure_decay_closed_form(self):
        # dC/dt = aC + Ca^T with a = -k I has solution C0 exp(-2kt).
        k = 3.0
        c0 = np.array([[2.0, 0.3], [0.3, 1.0]])
        c = propagate_covariance(-k * np.eye(2), np.zeros((2, 2)), c0,
                                 t_final=0.5, dt_max=1e-4)
        assert np.allclose(c, c0 * np.exp(-2.0 * k * 0.5), rtol=1e-12)

    def test_rotation_preserves_trace(self):
        # Skew-symmetric drift is a rotation; the trace is an invariant.
        w = 2.0
        a = np.array([[0.0, w], [-w, 0.0]])
        c0 = np.diag([2.0, 0.5])
        c = propagate_covariance(a, np.zeros((2, 2)), c0, t_final=1.0, dt_max=1e-4)
        assert np.trace(c) == pytest.approx(np.trace(c0), rel=1e-10)
        assert np.allclose(c, c.T)

    def test_constant_diffusion_fixed_point(self, rng):
        # At the steady state every integrator step is exactly zero.
        a = random_hurwitz(rng, 4)
        q = random_psd(rng, 4)
        c_star = solve_lyapunov(a, q)
        stepped = rk4_step(a, lambda t: q, c_star, 0.0, 0.1)
        assert np.allclose(stepped, c_star, rtol=0, atol=1e-13 * np.linalg.norm(c_star))

    def test_time_dependent_diffusion(self):
        # With a(t) modulating the injection the result stays symmetric
        # and matches a reference computed at much finer resolution.
        a = -np.eye(2)

        def diffusion(t):
            return (1.0 + 0.5 * np.sin(3.0 * t)) * np.eye(2)

        coarse = propagate_covariance(a, diffusion, 0.5 * np.eye(2), 2.0, 1e-3)
        fine = propagate_covariance(a, diffusion, 0.5 * np.eye(2), 2.0, 1e-4)
        assert np.allclose(coarse, fine, rtol=1e-10)
        assert np.allclose(coarse, coarse.T)

    def test_budget_error(self):
        with pytest.raises(BudgetError):
            propagate_covariance(-np.eye(2), np.eye(2), np.eye(2),
                                 t_final=1.0, dt_max=1e-6, step_budget=100)

    def test_divergence_error(self):
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(DivergenceError):
                propagate_covariance(np.array([[5.0]]), np.zeros((1, 1)),
                                     np.array([[1.0]]), t_final=200.0, dt_max=1.0)
