"""Command-line interface.

Subcommands::

    magnomech steady         one operating point -> steady.csv / steady.json
    magnomech sweep          axis grid           -> sweep.csv / sweep.json
    magnomech critical-temp  entanglement death  -> critical_temp.json
    magnomech oracle         integration cross-check -> oracle.json
    magnomech validity       linearization audit -> validity.json

All subcommands accept ``--config FILE`` (repeatable, later files win) and
``--set KEY=VALUE`` (repeatable, wins over files). Exit codes: 0 success,
2 configuration problem, 3 computation failed.
"""

import argparse
import os
import sys

import numpy as np

from ._version import __version__
from .config import (ConfigError, parse_config_file, parse_overrides, resolve,
                     params_from_config, resolved_site_view,
                     thresholds_from_config)
from .errors import MagnomechError
from .model import build_model, rabi_for_target_G, solve_semiclassical
from .oracle import OracleConfig, integrate_pre_rwa, rescale_damping, steady_by_integration
from .steadystate import full_report, log_negativity, reduce_pair, steady_covariance
from .sweep import (find_critical_temperature, run_sweep, spec_from_config,
                    write_csv, write_json)
from .validity import audit


def _add_common(parser):
    parser.add_argument("--config", action="append", default=[], metavar="FILE",
                        help="config file (repeatable; later files override earlier)")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        dest="overrides", help="override one config key (repeatable)")
    parser.add_argument("--out", default=".", metavar="DIR",
                        help="output directory (default: current directory)")


def _add_format(parser):
    parser.add_argument("--format", choices=("csv", "json", "both"), default="both",
                        help="output file format(s) (default: both)")


def _load_config(args):
    layers = [parse_config_file(path) for path in args.config]
    layers.append(parse_overrides(args.overrides))
    return resolve(*layers)


def _meta(cfg):
    view = resolved_site_view(cfg)
    return {"version": __version__, "params": {k: view[k] for k in sorted(view)}}


def _oracle_config(cfg):
    base = OracleConfig()
    return OracleConfig(
        horizon_factor=cfg.get("oracle.horizon_factor", base.horizon_factor),
        dt_factor=cfg.get("oracle.dt_factor", base.dt_factor),
        report_cadence=cfg.get("oracle.report_cadence", base.report_cadence),
    )


def _write_rows(args, cfg, spec, rows, stem):
    os.makedirs(args.out, exist_ok=True)
    written = []
    if args.format in ("csv", "both"):
        path = os.path.join(args.out, f"{stem}.csv")
        write_csv(path, spec, rows)
        written.append(path)
    if args.format in ("json", "both"):
        path = os.path.join(args.out, f"{stem}.json")
        write_json(path, spec, rows)
        written.append(path)
    return written


def _write_json_doc(args, name, doc):
    import json

    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, name)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path


def cmd_steady(args):
    cfg = _load_config(args)
    spec = spec_from_config(cfg)
    if spec.axes:
        raise ConfigError("steady computes a single point; drop axis1/axis2 keys "
                          "or use the sweep subcommand")
    rows = run_sweep(spec)
    row = rows[0]
    if row.error_code:
        print(f"computation failed: {row.error_code}", file=sys.stderr)
    else:
        print(f"E_cavity = {row.e_cavity:.6f}  E_magnon = {row.e_magnon:.6f}  "
              f"E_phonon = {row.e_phonon:.6f}")
    for path in _write_rows(args, cfg, spec, rows, "steady"):
        print(f"wrote {path}")
    return 0 if not row.error_code else 3


def cmd_sweep(args):
    cfg = _load_config(args)
    spec = spec_from_config(cfg)
    if not spec.axes:
        raise ConfigError("sweep needs at least axis1.path/start/stop/points")
    rows = run_sweep(spec, threads=args.threads)
    failed = sum(1 for r in rows if r.error_code)
    print(f"swept {len(rows)} points ({failed} failed)")
    for path in _write_rows(args, cfg, spec, rows, "sweep"):
        print(f"wrote {path}")
    return 0


def cmd_critical_temp(args):
    cfg = _load_config(args)
    p = params_from_config(cfg)
    t_low = args.t_low_mk * 1e-3
    t_high = args.t_high_mk * 1e-3
    t_crit = find_critical_temperature(p, t_low, t_high)
    print(f"critical temperature: {t_crit * 1e3:.3f} mK")
    doc = {
        "meta": _meta(cfg),
        "t_low_mk": args.t_low_mk,
        "t_high_mk": args.t_high_mk,
        "critical_temp_k": t_crit,
        "critical_temp_mk": t_crit * 1e3,
    }
    path = _write_json_doc(args, "critical_temp.json", doc)
    print(f"wrote {path}")
    return 0


def cmd_oracle(args):
    cfg = _load_config(args)
    p = params_from_config(cfg)
    if not args.true_gamma:
        p = rescale_damping(p)
    ocfg = _oracle_config(cfg)
    doc = {"meta": _meta(cfg), "damping_rescaled": not args.true_gamma}
    if args.pre_rwa:
        averaged, rwa_error = integrate_pre_rwa(p, ocfg, trace_path=args.trace)
        e_phonon = log_negativity(reduce_pair(averaged, "phonon"))
        doc.update({
            "mode": "pre_rwa",
            "rwa_error": rwa_error,
            "e_phonon_averaged": e_phonon,
        })
        print(f"relative covariance change without the rotating-wave "
              f"approximation: {rwa_error:.3e}")
    else:
        model = build_model(p)
        integrated = steady_by_integration(model, ocfg, trace_path=args.trace)
        direct = steady_covariance(model)
        scale = np.linalg.norm(direct.entries)
        rel = np.linalg.norm(integrated.entries - direct.entries) / scale
        doc.update({
            "mode": "rwa",
            "rel_difference": rel,
            "e_phonon_integration": log_negativity(reduce_pair(integrated, "phonon")),
            "e_phonon_direct": log_negativity(reduce_pair(direct, "phonon")),
        })
        print(f"integration vs direct solve: relative difference {rel:.3e}")
    path = _write_json_doc(args, "oracle.json", doc)
    print(f"wrote {path}")
    return 0


def cmd_validity(args):
    cfg = _load_config(args)
    p = params_from_config(cfg)
    thresholds = thresholds_from_config(cfg)
    if max(p.magnomech_coupling) > 0.0:
        rabi = rabi_for_target_G(p, p.magnomech_coupling)
    else:
        rabi = (0.0, 0.0)
    state = solve_semiclassical(p, rabi)
    report = audit(p, state, thresholds)
    doc = {
        "meta": _meta(cfg),
        "overall_pass": report.overall_pass,
        "sites": [],
        "thresholds": {
            "excitation": thresholds.excitation,
            "shift": thresholds.shift,
            "kerr": thresholds.kerr,
            "kerr_warn": thresholds.kerr_warn,
            "rwa": thresholds.rwa,
        },
    }
    for j in (0, 1):
        doc["sites"].append({
            "site": j + 1,
            "rabi_rad_s": report.rabi[j],
            "drive_field_tesla": report.drive_field[j],
            "spin_count": report.spin_count[j],
            "magnon_amp_abs": report.magnon_amp_abs[j],
            "magnon_occupation": report.magnon_occupation[j],
            "saturation_scale": report.saturation_scale[j],
            "excitation_ratio": report.excitation_ratio[j],
            "phonon_amp_abs": report.phonon_amp_abs[j],
            "detuning_shift_rad_s": report.detuning_shift[j],
            "shift_ratio": report.shift_ratio[j],
            "kerr_drive_rad_s": report.kerr_drive[j],
            "kerr_ratio": report.kerr_ratio[j],
            "rwa_ratio": report.rwa_ratio[j],
            "pass_excitation": report.pass_excitation[j],
            "pass_shift": report.pass_shift[j],
            "pass_kerr": report.pass_kerr[j],
            "kerr_warning": report.kerr_warning[j],
            "pass_rwa": report.pass_rwa[j],
        })
    status = "pass" if report.overall_pass else "FAIL"
    print(f"linearization audit: {status}")
    for site in doc["sites"]:
        print(f"  site {site['site']}: excitation {site['excitation_ratio']:.3e}  "
              f"shift {site['shift_ratio']:.3e}  kerr {site['kerr_ratio']:.3e}  "
              f"sideband {site['rwa_ratio']:.3e}")
    path = _write_json_doc(args, "validity.json", doc)
    print(f"wrote {path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magnomech",
        description="Steady-state entanglement of two squeezed-light-driven "
                    "cavity-magnon-phonon systems.",
    )
    parser.add_argument("--version", action="version", version=f"magnomech {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_steady = sub.add_parser("steady", help="single operating point")
    _add_common(p_steady)
    _add_format(p_steady)
    p_steady.set_defaults(func=cmd_steady)

    p_sweep = sub.add_parser("sweep", help="one- or two-axis parameter sweep")
    _add_common(p_sweep)
    _add_format(p_sweep)
    p_sweep.add_argument("--threads", type=int, default=1,
                         help="worker threads (default 1; output is identical)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_crit = sub.add_parser("critical-temp",
                            help="bath temperature where phonon-phonon entanglement dies")
    _add_common(p_crit)
    p_crit.add_argument("--t-low-mk", type=float, default=10.0,
                        help="lower bracket, millikelvin (default 10)")
    p_crit.add_argument("--t-high-mk", type=float, default=200.0,
                        help="upper bracket, millikelvin (default 200)")
    p_crit.set_defaults(func=cmd_critical_temp)

    p_oracle = sub.add_parser("oracle",
                              help="cross-check the solver by time integration")
    _add_common(p_oracle)
    p_oracle.add_argument("--pre-rwa", action="store_true",
                          help="integrate the fast-oscillation model instead")
    p_oracle.add_argument("--true-gamma", action="store_true",
                          help="keep the physical phonon damping (slow)")
    p_oracle.add_argument("--trace", default=None, metavar="FILE",
                          help="write per-step convergence trace CSV")
    p_oracle.set_defaults(func=cmd_oracle)

    p_val = sub.add_parser("validity", help="audit the linearized-model assumptions")
    _add_common(p_val)
    p_val.set_defaults(func=cmd_validity)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except MagnomechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
