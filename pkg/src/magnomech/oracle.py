"""Independent time-domain checks of the steady-state solver.

Two cross-checks live here. The first integrates the same linear model the
Lyapunov solver handles and lets the covariance relax, which validates the
algebraic steady state against an entirely separate numerical route. The
second integrates the dynamics without the rotating-wave step: the drive
detunings stay in the drift, the magnomechanical coupling keeps its
counter-rotating part, and the squeezed cross-site noise correlation
oscillates at the sum of the two detunings. Rotating the relaxed covariance
into the co-rotating frame and time-averaging isolates the error made by
the rotating-wave approximation.

Both integrators use fixed steps sized from the fastest rate in the drift,
so identical inputs produce identical outputs. Runs are normalized to the
largest drift entry internally (the steady state is invariant under that
joint time rescaling), which makes the convergence test dimensionless.

With the reference damping of around 100 Hz the mechanical relaxation is
six decades slower than the fastest oscillation and a full relaxation is
deliberately expensive; ``rescale_damping`` raises the phonon damping to a
tenth of the first cavity decay so the cross-checks finish in seconds.
"""

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from . import linalg
from .errors import BudgetError, ConvergenceError, DivergenceError, StabilityError
from .model import MODE_LABELS, build_diffusion, build_drift, build_noise
from .steadystate import CovarianceMatrix

_N_QUAD = 12


@dataclass(frozen=True)
class OracleConfig:
    """Tuning knobs for the integration cross-checks.

    ``horizon_factor`` counts multiples of the slowest decay time,
    ``dt_factor`` is the step as a fraction of the fastest drift timescale,
    ``report_cadence`` the steps between trace samples.
    """

    horizon_factor: float = 20.0
    dt_factor: float = 0.02
    step_budget: int = 100_000_000
    report_cadence: int = 500
    convergence_tol: float = 1e-9

    def __post_init__(self):
        if not (self.horizon_factor >= 5.0):
            raise ValueError(f"horizon_factor must be at least 5, got {self.horizon_factor}")
        if not (0.0 < self.dt_factor <= 0.1):
            raise ValueError(f"dt_factor must lie in (0, 0.1], got {self.dt_factor}")
        if self.step_budget < 1000:
            raise ValueError(f"step_budget must be at least 1000, got {self.step_budget}")
        if self.report_cadence < 1:
            raise ValueError(f"report_cadence must be positive, got {self.report_cadence}")
        if not (0.0 < self.convergence_tol < 1.0):
            raise ValueError(f"convergence_tol must lie in (0, 1), got {self.convergence_tol}")


def rescale_damping(p, fraction=0.1):
    """Copy of ``p`` with both phonon dampings set to ``fraction`` of the
    first cavity decay. Desk-speed stand-in for relaxation studies."""
    gm = fraction * p.cavity_decay[0]
    return replace(p, phonon_damp=(gm, gm))


def _scaled_system(drift, diffusion):
    """Normalize drift and diffusion by the largest drift entry."""
    scale = float(np.max(np.abs(drift)))
    if scale <= 0.0:
        raise StabilityError("drift is identically zero", abscissa=0.0)
    return drift / scale, diffusion / scale, scale


def _open_trace(trace_path, header):
    if trace_path is None:
        return None, None
    fh = open(trace_path, "w", newline="")
    writer = csv.writer(fh)
    writer.writerow(header)
    return fh, writer


def steady_by_integration(model, cfg=OracleConfig(), trace_path=None):
    """Relax the covariance of ``model`` to its steady state by integration.

    Starts from vacuum and steps the covariance equation with the model's
    constant diffusion until the scaled derivative norm falls below
    ``cfg.convergence_tol * max(|C|, 1)``, or the horizon
    ``cfg.horizon_factor`` slowest-decay times is reached.

    Parameters
    ----------
    model : LinearModel
        Stable model to relax.
    cfg : OracleConfig, optional
    trace_path : str, optional
        Write a CSV trace (step, time, representative variances and
        cross correlations, derivative norm) every ``report_cadence``
        steps.

    Returns
    -------
    CovarianceMatrix

    Raises
    ------
    ConvergenceError
        If the horizon is reached first; carries the last derivative norm.
    BudgetError
        If the requested horizon needs more than ``cfg.step_budget`` steps.
    """
    abscissa = linalg.spectral_abscissa(model.drift)
    if abscissa >= 0.0:
        raise StabilityError(
            f"cannot relax an unstable model (spectral abscissa {abscissa:.6e})",
            abscissa=abscissa,
        )
    a, d, scale = _scaled_system(model.drift, model.diffusion)
    sa = abscissa / scale  # negative, scaled units
    horizon = cfg.horizon_factor / abs(sa)
    dt = cfg.dt_factor / max(float(np.max(np.abs(a))), 1e-300)
    n_steps = int(math.ceil(horizon / dt))
    if n_steps > cfg.step_budget:
        raise BudgetError(
            f"{n_steps} steps needed for horizon {horizon:.3e} at dt {dt:.3e}; "
            f"budget is {cfg.step_budget}"
        )

    fh, writer = _open_trace(
        trace_path,
        ["step", "time_s", "var_x1", "var_X1", "var_q1", "cov_x1x2", "cov_q1q2", "deriv_norm"],
    )
    try:
        c = 0.5 * np.eye(_N_QUAD)
        deriv_norm = math.inf
        for step in range(n_steps):
            deriv = a @ c + c @ a.T + d
            deriv_norm = float(np.linalg.norm(deriv))
            if writer is not None and step % cfg.report_cadence == 0:
                t_s = step * dt / scale
                writer.writerow([step, f"{t_s:.12g}", f"{c[0, 0]:.12g}", f"{c[4, 4]:.12g}",
                                 f"{c[8, 8]:.12g}", f"{c[0, 2]:.12g}", f"{c[8, 10]:.12g}",
                                 f"{deriv_norm:.12g}"])
            if deriv_norm < cfg.convergence_tol * max(float(np.linalg.norm(c)), 1.0):
                break
            c = linalg.rk4_step(a, lambda t: d, c, step * dt, dt)
            if not np.all(np.isfinite(c)):
                raise DivergenceError(
                    f"covariance became non-finite at t = {step * dt / scale:.6e} s",
                    time_reached=step * dt / scale,
                )
        else:
            raise ConvergenceError(
                f"horizon of {n_steps} steps reached with derivative norm "
                f"{deriv_norm:.3e} still above tolerance",
                residual=deriv_norm,
            )
    finally:
        if fh is not None:
            fh.close()

    physical = bool(np.any(model.diffusion))
    return CovarianceMatrix(entries=c, mode_order=model.mode_order,
                            check_physical=physical)


def pre_rwa_drift(p):
    """Drift of the linearized dynamics before the rotating-wave step.

    Written in the frame rotating at each drive frequency, 12 x 12. The
    detunings appear as quadrature rotation blocks, the phonons rotate at
    their own frequencies, and the magnomechanical coupling acts through
    the mechanical position only (weight 2G on one quadrature each way)
    instead of the symmetric beamsplitter form.
    """
    a = np.zeros((_N_QUAD, _N_QUAD))
    for j in range(2):
        c, m, b = 2 * j, 4 + 2 * j, 8 + 2 * j
        delta = p.detuning[j]
        wb = p.phonon_freq[j]
        ka = p.cavity_decay[j]
        km = p.magnon_decay[j]
        gm = p.phonon_damp[j]
        g = p.cavity_magnon_coupling[j]
        gmb = p.magnomech_coupling[j]

        a[c, c] = -ka
        a[c, c + 1] = delta
        a[c + 1, c] = -delta
        a[c + 1, c + 1] = -ka
        a[c, m + 1] = g
        a[c + 1, m] = -g

        a[m, m] = -km
        a[m, m + 1] = delta
        a[m + 1, m] = -delta
        a[m + 1, m + 1] = -km
        a[m, c + 1] = g
        a[m + 1, c] = -g
        a[m, b] = -2.0 * gmb

        a[b, b] = -gm
        a[b, b + 1] = wb
        a[b + 1, b] = -wb
        a[b + 1, b + 1] = -gm
        a[b + 1, m + 1] = 2.0 * gmb
    return a


def integrate_pre_rwa(p, cfg=OracleConfig(), trace_path=None):
    """Covariance of the pre-rotating-wave dynamics, and the error of the
    rotating-wave steady state against it.

    Integrates the full dynamics (detunings, counter-rotating coupling,
    squeezed cross correlation oscillating at the detuning sum) until the
    transient has decayed, then keeps stepping over an averaging window of
    ten periods of the slowest correlation beat. Every sample in the
    window is rotated, mode by mode, into the frame where the
    rotating-wave model is static, and the rotated samples are averaged.

    Returns
    -------
    (CovarianceMatrix, float)
        The averaged co-rotating covariance and its relative Frobenius
        deviation from the rotating-wave steady state.

    Raises
    ------
    StabilityError
        If either the full or the rotating-wave drift fails to be Hurwitz
        (the counter-rotating coupling can destabilize strong-coupling
        parameter sets that are fine after the rotating-wave step).
    """
    drift_rwa = build_drift(p)
    diffusion_rwa = build_diffusion(p, build_noise(p))
    c_rwa = linalg.solve_lyapunov(drift_rwa, diffusion_rwa)

    drift_full = pre_rwa_drift(p)
    abscissa = linalg.spectral_abscissa(drift_full)
    if abscissa >= 0.0:
        raise StabilityError(
            f"pre-rotating-wave drift is unstable (spectral abscissa {abscissa:.6e})",
            abscissa=abscissa,
        )
    a, d_static, scale = _scaled_system(drift_full, diffusion_rwa)
    d_static = d_static.copy()
    # the cross-site squeezing block is not static here; rebuild it each step
    d_static[0:2, 2:4] = 0.0
    d_static[2:4, 0:2] = 0.0
    noise = build_noise(p)
    m_amp = 2.0 * math.sqrt(p.cavity_decay[0] * p.cavity_decay[1]) \
        * abs(noise.squeeze_correlation) / scale
    m_phase = math.atan2(noise.squeeze_correlation.imag, noise.squeeze_correlation.real)
    delta_sum = (p.detuning[0] + p.detuning[1]) / scale

    def diffusion_at(tau):
        d = d_static.copy()
        # correlation phase rotates as M exp(-i (Delta1 + Delta2) t)
        ph = m_phase - delta_sum * tau
        re_m, im_m = m_amp * math.cos(ph), m_amp * math.sin(ph)
        d[0, 2] = d[2, 0] = re_m
        d[0, 3] = d[3, 0] = im_m
        d[1, 2] = d[2, 1] = im_m
        d[1, 3] = d[3, 1] = -re_m
        return d

    sa = abscissa / scale
    horizon = cfg.horizon_factor / abs(sa)
    dt = cfg.dt_factor / max(float(np.max(np.abs(a))), 1e-300)
    n_settle = int(math.ceil(horizon / dt))
    # averaging window: ten periods of the slowest beat among the residual
    # oscillations (twice each detuning, and their sum)
    beats = (2.0 * p.detuning[0] / scale, 2.0 * p.detuning[1] / scale, delta_sum)
    slowest = min(b for b in beats if b > 0.0)
    n_avg = int(math.ceil((10.0 * 2.0 * math.pi / slowest) / dt))
    if n_settle + n_avg > cfg.step_budget:
        raise BudgetError(
            f"{n_settle + n_avg} steps needed (settle {n_settle}, average {n_avg}); "
            f"budget is {cfg.step_budget}"
        )

    # per-mode rotation rates into the co-rotating frame, scaled units
    mode_rates = []
    for group in range(3):
        for j in range(2):
            mode_rates.append(p.detuning[j] / scale if group < 2 else p.phonon_freq[j] / scale)
    # ordering above: cavity1, cavity2, magnon1, magnon2, phonon1, phonon2

    fh, writer = _open_trace(
        trace_path,
        ["step", "time_s", "var_x1", "var_X1", "var_q1", "cov_x1x2", "cov_q1q2"],
    )
    try:
        c = 0.5 * np.eye(_N_QUAD)
        tau = 0.0
        for step in range(n_settle):
            if writer is not None and step % cfg.report_cadence == 0:
                writer.writerow([step, f"{tau / scale:.12g}", f"{c[0, 0]:.12g}",
                                 f"{c[4, 4]:.12g}", f"{c[8, 8]:.12g}",
                                 f"{c[0, 2]:.12g}", f"{c[8, 10]:.12g}"])
            c = linalg.rk4_step(a, diffusion_at, c, tau, dt)
            tau = (step + 1) * dt
            if not np.all(np.isfinite(c)):
                raise DivergenceError(
                    f"covariance became non-finite at t = {tau / scale:.6e} s",
                    time_reached=tau / scale,
                )

        rot = np.zeros((_N_QUAD, _N_QUAD))
        acc = np.zeros((_N_QUAD, _N_QUAD))
        for step in range(n_avg):
            for k, rate in enumerate(mode_rates):
                th = rate * tau
                cth, sth = math.cos(th), math.sin(th)
                rot[2 * k, 2 * k] = cth
                rot[2 * k, 2 * k + 1] = -sth
                rot[2 * k + 1, 2 * k] = sth
                rot[2 * k + 1, 2 * k + 1] = cth
            acc += rot @ c @ rot.T
            c = linalg.rk4_step(a, diffusion_at, c, tau, dt)
            tau += dt
        acc /= n_avg
    finally:
        if fh is not None:
            fh.close()

    rwa_error = float(np.linalg.norm(acc - c_rwa) / np.linalg.norm(c_rwa))
    # the window average is physical only up to integration accuracy,
    # which sits well above the constructor's uncertainty tolerance
    cm = CovarianceMatrix(entries=acc, mode_order=MODE_LABELS, check_physical=False)
    return cm, rwa_error
