"""Consistency audit of the approximations behind the linearized model.

The linearization and the beamsplitter form of the magnomechanical
interaction rest on four conditions: the magnon excitation stays far below
saturation of the spin ensemble, the static mechanical displacement shifts
the detuning negligibly, the Kerr nonlinearity stays weak against the
drive, and the mechanical frequency dominates all other rates. The audit
evaluates each ratio and compares it to a configurable threshold.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ValidityThresholds:
    """Pass thresholds for the audit ratios."""

    excitation: float = 0.01
    shift: float = 0.01
    kerr: float = 0.5
    kerr_warn: float = 0.1
    rwa: float = 0.1


@dataclass(frozen=True)
class ValidityReport:
    """Audit ratios, drive figures and pass flags, per site."""

    magnon_amp_abs: tuple
    magnon_occupation: tuple
    saturation_scale: tuple   # 2 N s, spin ensemble capacity
    excitation_ratio: tuple
    phonon_amp_abs: tuple
    detuning_shift: tuple     # 2 G0 |<b>|, rad/s
    shift_ratio: tuple
    kerr_drive: tuple         # K |<m>|^3, rad/s
    rabi: tuple
    kerr_ratio: tuple
    rwa_ratio: tuple
    spin_count: tuple
    drive_field: tuple        # magnetic drive amplitude, tesla
    pass_excitation: tuple
    pass_shift: tuple
    pass_kerr: tuple
    kerr_warning: tuple
    pass_rwa: tuple
    thresholds: ValidityThresholds

    @property
    def overall_pass(self):
        """True when every check passes on both sites."""
        return all(self.pass_excitation) and all(self.pass_shift) \
            and all(self.pass_kerr) and all(self.pass_rwa)


def spin_count(p):
    """Number of spins in each sphere, rho (4 pi / 3) (d/2)^3, rounded.

    Values at realistic sphere sizes exceed the integer resolution of
    float64, in which case the nearest representable value is returned.
    """
    out = []
    for d in p.sphere_diameter:
        out.append(float(round(p.spin_density * (4.0 * math.pi / 3.0) * (d / 2.0) ** 3)))
    return tuple(out)


def audit(p, state, thresholds=ValidityThresholds()):
    """Audit a semiclassical working point against the model assumptions.

    Parameters
    ----------
    p : SystemParams
        Parameter set under audit.
    state : SemiclassicalState
        Mean fields at the operating drive, from ``solve_semiclassical``.
    thresholds : ValidityThresholds, optional
        Pass levels for each ratio.

    Returns
    -------
    ValidityReport
    """
    spins = spin_count(p)
    m_abs, occ, sat, exc = [], [], [], []
    b_abs, shift, shift_r = [], [], []
    kerr_d, kerr_r, rwa_r, field = [], [], [], []
    p_exc, p_shift, p_kerr, w_kerr, p_rwa = [], [], [], [], []

    for j in range(2):
        ma = abs(state.magnon_amp[j])
        mm = ma * ma
        two_ns = 2.0 * spins[j] * p.spin_number
        ba = abs(state.phonon_amp[j])
        sh = 2.0 * p.single_magnon_coupling[j] * ba
        kd = p.kerr_coeff[j] * ma ** 3
        rabi = state.rabi[j]

        m_abs.append(ma)
        occ.append(mm)
        sat.append(two_ns)
        exc.append(mm / two_ns)
        b_abs.append(ba)
        shift.append(sh)
        shift_r.append(sh / p.phonon_freq[j])
        kerr_d.append(kd)
        kerr_r.append(kd / rabi if rabi > 0.0 else 0.0)
        rwa_r.append(p.max_rate(j) / p.phonon_freq[j])
        # drive amplitude for an s = 5/2 ensemble: Omega = (sqrt(5)/4) gyro sqrt(N) B
        field.append(rabi / ((math.sqrt(5.0) / 4.0) * p.gyro_ratio * math.sqrt(spins[j])))

        p_exc.append(exc[-1] < thresholds.excitation)
        p_shift.append(shift_r[-1] < thresholds.shift)
        p_kerr.append(kerr_r[-1] < thresholds.kerr)
        w_kerr.append(thresholds.kerr_warn <= kerr_r[-1] < thresholds.kerr)
        p_rwa.append(rwa_r[-1] < thresholds.rwa)

    return ValidityReport(
        magnon_amp_abs=tuple(m_abs),
        magnon_occupation=tuple(occ),
        saturation_scale=tuple(sat),
        excitation_ratio=tuple(exc),
        phonon_amp_abs=tuple(b_abs),
        detuning_shift=tuple(shift),
        shift_ratio=tuple(shift_r),
        kerr_drive=tuple(kerr_d),
        rabi=tuple(state.rabi),
        kerr_ratio=tuple(kerr_r),
        rwa_ratio=tuple(rwa_r),
        spin_count=spins,
        drive_field=tuple(field),
        pass_excitation=tuple(p_exc),
        pass_shift=tuple(p_shift),
        pass_kerr=tuple(p_kerr),
        kerr_warning=tuple(w_kerr),
        pass_rwa=tuple(p_rwa),
        thresholds=thresholds,
    )
