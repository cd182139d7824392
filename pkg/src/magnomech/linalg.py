"""Dense linear-algebra kernel for quadrature covariance dynamics.

Everything here operates on plain real ``numpy`` arrays. Matrices are small
(12 x 12 for the full two-site model), so direct dense methods are used
throughout. The continuous Lyapunov solver and the explicit propagator are
deliberately independent code paths: one is used to cross-check the other.
"""

import numpy as np

from .errors import BudgetError, DivergenceError, NumericsError, StabilityError

#: Default ceiling on explicit integration steps.
STEP_BUDGET_DEFAULT = 100_000_000

#: Relative residual bound enforced on every Lyapunov solve.
LYAPUNOV_RESIDUAL_TOL = 1e-10


def _as_square(a, name):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"{name} must be a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def _require_symmetric(a, name, rtol=1e-12):
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > rtol * max(scale, 1.0):
        raise ValueError(f"{name} must be symmetric")


def eigenvalues(a):
    """Eigenvalues of a real square matrix.

    Parameters
    ----------
    a : (n, n) array_like
        Real matrix.

    Returns
    -------
    (n,) ndarray of complex
        Unordered eigenvalue spectrum.
    """
    a = _as_square(a, "a")
    return np.linalg.eigvals(a)


def spectral_abscissa(a):
    """Largest real part of the spectrum of ``a``.

    Negative value means every mode of ``xdot = a x`` decays, i.e. the
    matrix is Hurwitz and a steady covariance exists.
    """
    return float(np.max(eigenvalues(a).real))


def solve_lyapunov(a, q):
    """Solve the continuous Lyapunov equation ``a c + c a^T = -q``.

    The equation is vectorized into an ``(n^2, n^2)`` linear system and
    solved directly. Inputs are normalized by the largest drift entry
    first; the solution is invariant under that joint rescaling, and the
    normalization keeps the system well scaled when rates span many
    decades. One step of iterative refinement is applied, the result is
    symmetrized, and the residual is recomputed and enforced.

    Parameters
    ----------
    a : (n, n) array_like
        Hurwitz drift matrix.
    q : (n, n) array_like
        Symmetric inhomogeneity (diffusion matrix).

    Returns
    -------
    (n, n) ndarray
        Symmetric solution ``c``.

    Raises
    ------
    StabilityError
        If ``a`` is not Hurwitz.
    NumericsError
        If the recomputed relative residual exceeds ``LYAPUNOV_RESIDUAL_TOL``.
    ValueError
        On shape mismatch, non-finite entries, or asymmetric ``q``.
    """
    a = _as_square(a, "a")
    q = _as_square(q, "q")
    if a.shape != q.shape:
        raise ValueError(f"shape mismatch: a is {a.shape}, q is {q.shape}")
    _require_symmetric(q, "q")

    abscissa = spectral_abscissa(a)
    if abscissa >= 0.0:
        raise StabilityError(
            f"drift is not Hurwitz (spectral abscissa {abscissa:.6e} >= 0)",
            abscissa=abscissa,
        )

    n = a.shape[0]
    scale = np.max(np.abs(a))
    if scale == 0.0:  # unreachable once Hurwitz, kept for safety
        raise StabilityError("drift is identically zero", abscissa=0.0)
    ah = a / scale
    qh = q / scale

    eye = np.eye(n)
    kron = np.kron(ah, eye) + np.kron(eye, ah)
    rhs = -qh.reshape(-1)
    x = np.linalg.solve(kron, rhs)
    # one refinement pass; cheap and removes most of the factorization error
    x += np.linalg.solve(kron, rhs - kron @ x)
    c = x.reshape(n, n)
    c = 0.5 * (c + c.T)

    qnorm = np.linalg.norm(q)
    residual = np.linalg.norm(a @ c + c @ a.T + q)
    if residual > LYAPUNOV_RESIDUAL_TOL * max(qnorm, np.finfo(float).tiny):
        raise NumericsError(
            f"Lyapunov residual {residual:.3e} exceeds "
            f"{LYAPUNOV_RESIDUAL_TOL:.0e} * |q| = {LYAPUNOV_RESIDUAL_TOL * qnorm:.3e}"
        )
    return c


def rk4_step(a, diffusion_at, c, t, dt):
    """Advance ``cdot = a c + c a^T + d(t)`` one classical Runge-Kutta step.

    ``diffusion_at`` maps time to the (symmetric) diffusion matrix. Returns
    the symmetrized covariance at ``t + dt``.
    """
    def f(tau, cc):
        return a @ cc + cc @ a.T + diffusion_at(tau)

    k1 = f(t, c)
    k2 = f(t + 0.5 * dt, c + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, c + 0.5 * dt * k2)
    k4 = f(t + dt, c + dt * k3)
    c_next = c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (c_next + c_next.T)


def propagate_covariance(a, diffusion, c0, t_final, dt_max,
                         step_budget=STEP_BUDGET_DEFAULT):
    """Integrate ``cdot = a c + c a^T + d(t)`` from 0 to ``t_final``.

    Classical fourth-order Runge-Kutta with a uniform step no larger than
    ``dt_max``. The covariance is symmetrized after every step. The step
    count is fixed by the arguments alone, so identical inputs give
    bit-identical outputs.

    Parameters
    ----------
    a : (n, n) array_like
        Drift matrix.
    diffusion : (n, n) array_like or callable
        Constant diffusion matrix, or a function ``t -> (n, n) array``
        for time-dependent noise.
    c0 : (n, n) array_like
        Symmetric initial covariance.
    t_final : float
        Integration horizon, must be nonnegative.
    dt_max : float
        Upper bound on the step size, must be positive.
    step_budget : int, optional
        Hard ceiling on the number of steps.

    Returns
    -------
    (n, n) ndarray
        Covariance at ``t_final``.

    Raises
    ------
    BudgetError
        If more than ``step_budget`` steps would be needed.
    DivergenceError
        If non-finite entries appear; the message names the time reached.
    """
    a = _as_square(a, "a")
    c = _as_square(c0, "c0").copy()
    _require_symmetric(c, "c0")
    if a.shape != c.shape:
        raise ValueError(f"shape mismatch: a is {a.shape}, c0 is {c.shape}")
    if not (t_final >= 0.0):
        raise ValueError(f"t_final must be nonnegative, got {t_final}")
    if not (dt_max > 0.0):
        raise ValueError(f"dt_max must be positive, got {dt_max}")

    if callable(diffusion):
        diffusion_at = diffusion
    else:
        d_const = _as_square(diffusion, "diffusion")
        _require_symmetric(d_const, "diffusion")
        diffusion_at = lambda t: d_const  # noqa: E731

    if t_final == 0.0:
        return c

    n_steps = int(np.ceil(t_final / dt_max))
    if n_steps > step_budget:
        raise BudgetError(
            f"{n_steps} steps needed for t_final={t_final:.3e}, "
            f"dt_max={dt_max:.3e}; budget is {step_budget}"
        )
    dt = t_final / n_steps

    t = 0.0
    for i in range(n_steps):
        c = rk4_step(a, diffusion_at, c, t, dt)
        t = (i + 1) * dt
        if not np.all(np.isfinite(c)):
            raise DivergenceError(
                f"covariance became non-finite at t = {t:.6e}", time_reached=t
            )
    return c
