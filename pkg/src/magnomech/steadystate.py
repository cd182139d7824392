"""Steady-state covariance matrices and bipartite entanglement measures.

The steady covariance of the linearized model solves the Lyapunov equation
set by the drift and diffusion matrices. Entanglement between two modes is
quantified by the logarithmic negativity of their 4 x 4 reduced covariance,
computed from the minimum symplectic eigenvalue after partial transposition.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NumericsError, StabilityError
from .model import MODE_INDEX, MODE_LABELS

#: Index blocks of the three same-type cross-site pairs.
PAIR_INDICES = {
    "cavity": (0, 1, 2, 3),
    "magnon": (4, 5, 6, 7),
    "phonon": (8, 9, 10, 11),
}

#: Relative tolerance for the eigenvalue-pair degeneracy of i Omega C.
PAIRING_TOL = 1e-8

#: Relative agreement required between the two symplectic eigenvalue routes.
METHOD_AGREEMENT_TOL = 1e-10


def _symplectic_form(n_modes):
    blocks = [np.array([[0.0, 1.0], [-1.0, 0.0]]) for _ in range(n_modes)]
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for k, b in enumerate(blocks):
        out[2 * k:2 * k + 2, 2 * k:2 * k + 2] = b
    return out


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric quadrature covariance with mode bookkeeping.

    ``check_physical`` verifies the bona fide conditions: positivity of
    C + i Omega / 2 and the per-mode uncertainty bound det >= 1/4, both
    within a 1e-10 slack. It is disabled for diagnostic solutions of the
    homogeneous equation (zero diffusion), which are valid matrices but
    not states.
    """

    entries: np.ndarray
    mode_order: tuple = MODE_LABELS
    check_physical: bool = True

    def __post_init__(self):
        c = np.asarray(self.entries, dtype=float)
        n = len(self.mode_order)
        if c.shape != (n, n):
            raise ValueError(f"covariance must be {n} x {n}, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("covariance contains non-finite entries")
        scale = max(float(np.linalg.norm(c)), 1.0)
        if np.linalg.norm(c - c.T) > 1e-10 * scale:
            raise ValueError("covariance is not symmetric")
        c = 0.5 * (c + c.T)
        object.__setattr__(self, "entries", c)
        if self.check_physical:
            omega = _symplectic_form(n // 2)
            min_eig = float(np.min(np.linalg.eigvalsh(c + 0.5j * omega)))
            if min_eig < -1e-10 * scale:
                raise ValueError(
                    f"covariance violates the uncertainty principle "
                    f"(min eigenvalue of C + i Omega/2 is {min_eig:.3e})"
                )
            for k in range(n // 2):
                blk = c[2 * k:2 * k + 2, 2 * k:2 * k + 2]
                if float(np.linalg.det(blk)) < 0.25 - 1e-10:
                    raise ValueError(
                        f"mode {self.mode_order[2 * k]}/{self.mode_order[2 * k + 1]}: "
                        f"single-mode determinant {np.linalg.det(blk):.6e} below 1/4"
                    )


@dataclass(frozen=True)
class EntanglementReport:
    """Logarithmic negativity of the three cross-site same-type pairs."""

    e_cavity: float
    e_magnon: float
    e_phonon: float
    nu_cavity: float
    nu_magnon: float
    nu_phonon: float
    rwa_suspect: bool = False

    def __post_init__(self):
        for e, nu, name in ((self.e_cavity, self.nu_cavity, "cavity"),
                            (self.e_magnon, self.nu_magnon, "magnon"),
                            (self.e_phonon, self.nu_phonon, "phonon")):
            expected = max(0.0, -math.log(2.0 * nu))
            if abs(e - expected) > 1e-12 * max(1.0, abs(expected)):
                raise ValueError(
                    f"{name}: negativity {e} inconsistent with eigenvalue {nu}"
                )


def steady_covariance(model):
    """Steady-state covariance of a stable linear model.

    Solves the Lyapunov equation for the model's drift and diffusion and
    wraps the result with physicality checks (skipped for an identically
    zero diffusion, whose steady state is the zero matrix).

    Raises
    ------
    StabilityError
        If the drift is not Hurwitz; the message carries the spectral
        abscissa.
    """
    abscissa = linalg.spectral_abscissa(model.drift)
    if abscissa >= 0.0:
        raise StabilityError(
            f"no steady state: drift spectral abscissa {abscissa:.6e} >= 0",
            abscissa=abscissa,
        )
    c = linalg.solve_lyapunov(model.drift, model.diffusion)
    physical = bool(np.any(model.diffusion))
    return CovarianceMatrix(entries=c, mode_order=model.mode_order,
                            check_physical=physical)


def reduce_pair(cm, pair):
    """4 x 4 reduced covariance of a same-type cross-site pair.

    ``pair`` is one of ``"cavity"``, ``"magnon"``, ``"phonon"``; the result
    orders site 1 quadratures before site 2.
    """
    if pair not in PAIR_INDICES:
        raise ValueError(f"unknown pair {pair!r}, expected one of {sorted(PAIR_INDICES)}")
    idx = PAIR_INDICES[pair]
    return cm.entries[np.ix_(idx, idx)].copy()


def reduce_modes(cm, mode_a, mode_b):
    """4 x 4 reduced covariance of two arbitrary named modes.

    Mode names are ``cavity1`` ... ``phonon2``; ``mode_a`` quadratures come
    first in the reduction.
    """
    for name in (mode_a, mode_b):
        if name not in MODE_INDEX:
            raise ValueError(f"unknown mode {name!r}, expected one of {sorted(MODE_INDEX)}")
    if mode_a == mode_b:
        raise ValueError("need two distinct modes")
    idx = MODE_INDEX[mode_a] + MODE_INDEX[mode_b]
    return cm.entries[np.ix_(idx, idx)].copy()


def partial_transpose(c4):
    """Partial transposition of a two-mode covariance (momentum flip, mode 1)."""
    c4 = np.asarray(c4, dtype=float)
    if c4.shape != (4, 4):
        raise ValueError(f"expected a 4 x 4 covariance, got {c4.shape}")
    flip = np.diag([1.0, -1.0, 1.0, 1.0])
    return flip @ c4 @ flip


def symplectic_eigenvalues(c4):
    """Symplectic spectrum of a 4 x 4 covariance, two independent routes.

    Route one takes the moduli of the eigenvalues of i Omega C, which come
    in two degenerate pairs; route two evaluates the closed form

        nu_{-,+}^2 = (s -+ sqrt(s^2 - 4 det C)) / 2,
        s = det A + det B + 2 det C_off

    on the 2 x 2 blocks of the input. Both are computed on every call and
    must agree to ``METHOD_AGREEMENT_TOL`` relative; the pair degeneracy of
    route one must hold to ``PAIRING_TOL`` relative.

    Returns
    -------
    (float, float)
        Symplectic eigenvalues, smallest first.
    """
    c4 = np.asarray(c4, dtype=float)
    if c4.shape != (4, 4):
        raise ValueError(f"expected a 4 x 4 covariance, got {c4.shape}")
    if not np.all(np.isfinite(c4)):
        raise ValueError("covariance contains non-finite entries")
    if np.linalg.norm(c4 - c4.T) > 1e-10 * max(float(np.linalg.norm(c4)), 1.0):
        raise ValueError("covariance is not symmetric")

    omega = _symplectic_form(2)
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega @ c4)))
    for k in (0, 2):
        lo, hi = moduli[k], moduli[k + 1]
        if hi - lo > PAIRING_TOL * max(hi, 1e-300):
            raise NumericsError(
                f"eigenvalue moduli do not pair up: {moduli.tolist()}"
            )
    nu_minus_a = 0.5 * (moduli[0] + moduli[1])
    nu_plus_a = 0.5 * (moduli[2] + moduli[3])

    blk_a = np.linalg.det(c4[:2, :2])
    blk_b = np.linalg.det(c4[2:, 2:])
    blk_c = np.linalg.det(c4[:2, 2:])
    s = blk_a + blk_b + 2.0 * blk_c
    disc = s * s - 4.0 * np.linalg.det(c4)
    disc = max(disc, 0.0)  # roundoff guard at degenerate spectra
    root = math.sqrt(disc)
    nu_minus_b = math.sqrt(max((s - root) / 2.0, 0.0))
    nu_plus_b = math.sqrt(max((s + root) / 2.0, 0.0))

    scale = max(nu_plus_a, nu_plus_b, 1e-300)
    if (abs(nu_minus_a - nu_minus_b) > METHOD_AGREEMENT_TOL * scale
            or abs(nu_plus_a - nu_plus_b) > METHOD_AGREEMENT_TOL * scale):
        raise NumericsError(
            f"symplectic eigenvalue routes disagree: "
            f"({nu_minus_a!r}, {nu_plus_a!r}) vs ({nu_minus_b!r}, {nu_plus_b!r})"
        )
    return (nu_minus_a, nu_plus_a)


def log_negativity(c4):
    """Logarithmic negativity of a two-mode covariance.

    E = max(0, -ln 2 nu), with nu the minimum symplectic eigenvalue of the
    partially transposed covariance. Separable states give exactly 0.0.
    """
    nu_minus, _ = symplectic_eigenvalues(partial_transpose(c4))
    if nu_minus <= 0.0:
        raise NumericsError(f"degenerate partial transpose spectrum (nu = {nu_minus!r})")
    return max(0.0, -math.log(2.0 * nu_minus))


def tmsv_covariance(r, phase=0.0):
    """Covariance of an ideal two-mode squeezed vacuum with parameter ``r``.

    With zero phase the blocks are cosh(2r)/2 on the diagonal and
    sinh(2r)/2 times diag(1, -1) across the modes; the logarithmic
    negativity of this state is exactly 2r.
    """
    if r < 0.0:
        raise ValueError(f"r must be nonnegative, got {r}")
    ch = 0.5 * math.cosh(2.0 * r)
    sh = 0.5 * math.sinh(2.0 * r)
    cph, sph = math.cos(phase), math.sin(phase)
    c = np.diag([ch, ch, ch, ch])
    # cross block of <x_i x_j>-type moments for squeezing angle ``phase``
    cross = sh * np.array([[cph, sph], [sph, -cph]])
    c[:2, 2:] = cross
    c[2:, :2] = cross.T
    return c


def full_report(model):
    """The three same-type entanglement figures of the steady state.

    Solves for the covariance, reduces the cavity, magnon and phonon
    pairs, and reports each pair's minimum partial-transpose symplectic
    eigenvalue and logarithmic negativity.
    """
    cm = steady_covariance(model)
    values = {}
    for pair in ("cavity", "magnon", "phonon"):
        nu_minus, _ = symplectic_eigenvalues(partial_transpose(reduce_pair(cm, pair)))
        values[pair] = (max(0.0, -math.log(2.0 * nu_minus)), nu_minus)
    return EntanglementReport(
        e_cavity=values["cavity"][0],
        e_magnon=values["magnon"][0],
        e_phonon=values["phonon"][0],
        nu_cavity=values["cavity"][1],
        nu_magnon=values["magnon"][1],
        nu_phonon=values["phonon"][1],
        rwa_suspect=model.rwa_suspect,
    )
