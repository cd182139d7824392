"""Thermal robustness of the phonon-phonon entanglement.

Raising the bath temperature feeds thermal occupation mostly into the
phonon modes (the microwave modes are effectively at zero temperature
in the tens of millikelvin range). The phonon-pair entanglement decays
with temperature and dies at a sharp critical point, which a bisection
over the steady-state solution locates to sub-millikelvin precision.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from magnomech import (Axis, SweepSpec, default_params,
                       find_critical_temperature, resolve, run_sweep)


def main():
    t_crit = find_critical_temperature(default_params(), 0.010, 0.200)
    print(f"critical temperature: {t_crit * 1e3:.1f} mK")

    spec = SweepSpec(
        base=resolve({"output.validity": False}),
        axes=(Axis("bath_temp_mk", 1.0, 160.0, 60),),
        pairs=("phonon",),
    )
    rows = run_sweep(spec, threads=4)
    t_mk = np.array([row.values[0] for row in rows])
    e_pho = np.array([row.e_phonon for row in rows])

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t_mk, e_pho, label="phonon-phonon")
    ax.axvline(t_crit * 1e3, color="0.8", ls="--", lw=1,
               label=f"death at {t_crit * 1e3:.1f} mK")
    ax.set_xlabel("bath temperature (mK)")
    ax.set_ylabel("logarithmic negativity")
    ax.legend()
    fig.tight_layout()
    fig.savefig("entanglement_vs_temperature.png", dpi=150)
    print("wrote entanglement_vs_temperature.png")


if __name__ == "__main__":
    main()
