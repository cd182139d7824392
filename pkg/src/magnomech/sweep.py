"""Parameter sweeps, result serialization, and the critical-temperature search.

A sweep walks a one- or two-axis grid over any numeric model key, computes
the three cross-site entanglement figures at each point, optionally audits
the working point, and serializes rows to CSV and JSON. Row order follows
the grid (first axis outer), every float is printed with 12 significant
digits, and headers carry the fully resolved parameter set, so repeated
runs produce byte-identical files regardless of the thread count.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .config import (SWEEPABLE, ConfigError, params_from_config, resolve,
                     resolved_site_view, thresholds_from_config)
from .errors import (BracketError, BudgetError, ConvergenceError, DivergenceError,
                     FixedPointError, MagnomechError, NumericsError, SearchError,
                     StabilityError)
from .model import build_model, rabi_for_target_G, solve_semiclassical
from .steadystate import full_report
from .validity import audit

#: CSV columns after the grid-index and swept-value columns.
RESULT_COLUMNS = ("E_cavity", "E_magnon", "E_phonon", "nu_minus_phonon",
                  "stable", "validity_pass", "error_code")

_ERROR_CODES = (
    (StabilityError, "stability"),
    (BracketError, "bracket"),
    (SearchError, "search"),
    (FixedPointError, "fixedpoint"),
    (ConvergenceError, "convergence"),
    (DivergenceError, "divergence"),
    (BudgetError, "budget"),
    (NumericsError, "numerics"),
    (ConfigError, "config"),
    (MagnomechError, "error"),
)


def _error_code(exc):
    for cls, code in _ERROR_CODES:
        if isinstance(exc, cls):
            return code
    return "error"


@dataclass(frozen=True)
class Axis:
    """One sweep axis over a numeric config key."""

    path: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        base = self.path.split(".", 1)[1] if self.path.startswith(("site1.", "site2.")) \
            else self.path
        if base not in SWEEPABLE:
            raise ConfigError(f"axis path {self.path!r} is not a sweepable model key")
        if self.points < 1:
            raise ConfigError(f"axis {self.path}: points must be positive, got {self.points}")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"axis {self.path}: scale must be linear or log, got {self.scale!r}")
        if self.scale == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise ConfigError(f"axis {self.path}: log scale needs positive endpoints")

    def values(self):
        if self.points == 1:
            return np.array([self.start])
        if self.scale == "log":
            return np.logspace(np.log10(self.start), np.log10(self.stop), self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """Resolved base configuration plus axes and output switches."""

    base: dict
    axes: tuple = ()
    pairs: tuple = ("cavity", "magnon", "phonon")
    with_validity: bool = True

    def __post_init__(self):
        if len(self.axes) > 2:
            raise ConfigError(f"at most two sweep axes supported, got {len(self.axes)}")
        for pair in self.pairs:
            if pair not in ("cavity", "magnon", "phonon"):
                raise ConfigError(f"unknown output pair {pair!r}")


@dataclass(frozen=True)
class ResultRow:
    """One grid point of a sweep."""

    index: tuple
    values: tuple
    e_cavity: float = None
    e_magnon: float = None
    e_phonon: float = None
    nu_minus_phonon: float = None
    stable: bool = None
    validity_pass: bool = None
    error_code: str = ""


def spec_from_config(cfg):
    """Build a ``SweepSpec`` from a resolved flat config dict."""
    axes = []
    for name in ("axis1", "axis2"):
        if f"{name}.path" in cfg:
            missing = [k for k in ("start", "stop", "points")
                       if f"{name}.{k}" not in cfg]
            if missing:
                raise ConfigError(f"{name}: missing {', '.join(missing)}")
            axes.append(Axis(
                path=cfg[f"{name}.path"],
                start=float(cfg[f"{name}.start"]),
                stop=float(cfg[f"{name}.stop"]),
                points=int(cfg[f"{name}.points"]),
                scale=cfg.get(f"{name}.scale", "linear"),
            ))
        elif any(f"{name}.{k}" in cfg for k in ("start", "stop", "points", "scale")):
            raise ConfigError(f"{name}: path is required when axis keys are present")
    if "axis2.path" in cfg and "axis1.path" not in cfg:
        raise ConfigError("axis2 given without axis1")
    pairs = ("cavity", "magnon", "phonon")
    if "output.pairs" in cfg:
        pairs = tuple(p.strip() for p in str(cfg["output.pairs"]).split(",") if p.strip())
    return SweepSpec(
        base=dict(cfg),
        axes=tuple(axes),
        pairs=pairs,
        with_validity=bool(cfg.get("output.validity", True)),
    )


def run_point(p, spec):
    """Entanglement report and audit for one parameter set.

    Returns a ``ResultRow`` with empty index/values; the caller fills grid
    coordinates. Failures are encoded in ``error_code`` rather than
    raised, so one bad grid point cannot abort a long sweep.
    """
    e_cav = e_mag = e_pho = nu_pho = None
    stable = None
    validity_pass = None
    code = ""
    try:
        report = full_report(build_model(p))
        stable = True
        if "cavity" in spec.pairs:
            e_cav = report.e_cavity
        if "magnon" in spec.pairs:
            e_mag = report.e_magnon
        if "phonon" in spec.pairs:
            e_pho = report.e_phonon
            nu_pho = report.nu_phonon
        if spec.with_validity:
            thresholds = thresholds_from_config(spec.base)
            target = p.magnomech_coupling
            if max(target) > 0.0:
                rabi = rabi_for_target_G(p, target)
                state = solve_semiclassical(p, rabi)
            else:
                state = solve_semiclassical(p, (0.0, 0.0))
            validity_pass = audit(p, state, thresholds).overall_pass
    except StabilityError as exc:
        stable = False
        code = _error_code(exc)
    except MagnomechError as exc:
        code = _error_code(exc)
    return ResultRow(
        index=(), values=(),
        e_cavity=e_cav, e_magnon=e_mag, e_phonon=e_pho, nu_minus_phonon=nu_pho,
        stable=stable, validity_pass=validity_pass, error_code=code,
    )


def _point_configs(spec):
    """Grid coordinates, swept values and per-point config dicts, in row order."""
    if not spec.axes:
        yield (), (), dict(spec.base)
        return
    grids = [axis.values() for axis in spec.axes]
    if len(grids) == 1:
        for i, v in enumerate(grids[0]):
            over = dict(spec.base)
            over[spec.axes[0].path] = float(v)
            yield (i,), (float(v),), over
    else:
        for i, v1 in enumerate(grids[0]):
            for j, v2 in enumerate(grids[1]):
                over = dict(spec.base)
                over[spec.axes[0].path] = float(v1)
                over[spec.axes[1].path] = float(v2)
                yield (i, j), (float(v1), float(v2)), over


def _run_one(args):
    index, values, cfg, spec = args
    try:
        p = params_from_config(cfg)
    except ConfigError:
        return ResultRow(index=index, values=values, error_code="config")
    row = run_point(p, spec)
    return ResultRow(index=index, values=values,
                     e_cavity=row.e_cavity, e_magnon=row.e_magnon,
                     e_phonon=row.e_phonon, nu_minus_phonon=row.nu_minus_phonon,
                     stable=row.stable, validity_pass=row.validity_pass,
                     error_code=row.error_code)


def run_sweep(spec, threads=1):
    """Evaluate every grid point of ``spec``; row order follows the grid.

    ``threads`` controls a thread pool over the (independent) points; the
    result list is identical for any thread count.
    """
    if threads < 1:
        raise ConfigError(f"threads must be positive, got {threads}")
    tasks = [(index, values, cfg, spec) for index, values, cfg in _point_configs(spec)]
    if threads == 1:
        return [_run_one(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_run_one, tasks))


def find_critical_temperature(p, t_low, t_high, tol=0.5e-3, max_iter=40):
    """Temperature (K) where the phonon-phonon entanglement vanishes.

    Bisects the boundary between positive and zero logarithmic negativity
    of the phonon pair. Requires entanglement at ``t_low`` and none at
    ``t_high``; resolves the boundary to ``tol`` kelvin.

    Raises
    ------
    BracketError
        If both endpoints are entangled or both are separable.
    ConvergenceError
        If the bracket fails to shrink below ``tol`` within ``max_iter``
        bisection steps.
    """
    if not (0.0 <= t_low < t_high):
        raise ValueError(f"need 0 <= t_low < t_high, got {t_low}, {t_high}")

    from dataclasses import replace

    def e_phonon(temp):
        return full_report(build_model(replace(p, bath_temp=temp))).e_phonon

    e_low = e_phonon(t_low)
    e_high = e_phonon(t_high)
    if e_low <= 0.0 and e_high <= 0.0:
        raise BracketError(
            f"no entanglement anywhere in [{t_low}, {t_high}] K "
            f"(E = {e_low:.3e}, {e_high:.3e})"
        )
    if e_low > 0.0 and e_high > 0.0:
        raise BracketError(
            f"entangled at both ends of [{t_low}, {t_high}] K "
            f"(E = {e_low:.3e}, {e_high:.3e}); widen the bracket"
        )
    lo, hi = t_low, t_high
    for _ in range(max_iter):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if e_phonon(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"bracket [{lo}, {hi}] K still wider than {tol} K after {max_iter} bisections"
    )


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _row_cells(row):
    cells = [str(i) for i in row.index]
    cells += [_fmt(v) for v in row.values]
    cells += [_fmt(row.e_cavity), _fmt(row.e_magnon), _fmt(row.e_phonon),
              _fmt(row.nu_minus_phonon), _fmt(row.stable), _fmt(row.validity_pass),
              row.error_code]
    return cells


def _column_names(spec):
    names = list(("i", "j")[: len(spec.axes)])
    names += [axis.path for axis in spec.axes]
    names += list(RESULT_COLUMNS)
    return names


def write_csv(path, spec, rows):
    """Serialize rows to CSV with a resolved-parameter comment header."""
    view = resolved_site_view(spec.base)
    lines = [f"# magnomech {__version__}"]
    for key in sorted(view):
        lines.append(f"# {key} = {_fmt(view[key])}")
    lines.append(",".join(_column_names(spec)))
    for row in rows:
        lines.append(",".join(_row_cells(row)))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path, spec, rows):
    """Serialize rows to JSON mirroring the CSV columns."""
    view = resolved_site_view(spec.base)
    out_rows = []
    for row in rows:
        entry = {}
        for name, i in zip(("i", "j"), row.index):
            entry[name] = i
        for axis, value in zip(spec.axes, row.values):
            entry[axis.path] = value
        entry.update({
            "E_cavity": row.e_cavity,
            "E_magnon": row.e_magnon,
            "E_phonon": row.e_phonon,
            "nu_minus_phonon": row.nu_minus_phonon,
            "stable": row.stable,
            "validity_pass": row.validity_pass,
            "error_code": row.error_code,
        })
        out_rows.append(entry)
    doc = {
        "meta": {"version": __version__, "params": {k: view[k] for k in sorted(view)}},
        "rows": out_rows,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")
