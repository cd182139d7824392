"""Flat key-value configuration for the command line and sweep layers.

Configs are plain text, one ``key = value`` per line, ``#`` comments.
Keys use dotted paths; ordinary frequencies are given in Hz (converted to
rad/s at this boundary), temperatures in mK through the ``_mk`` suffix key.
A key without a site prefix applies to both sites; ``site1.``/``site2.``
prefixed keys override it per site.

The built-in defaults reproduce the reference operating point used across
the documentation: both sites at 10 GHz, mechanical modes at 10 and
12 MHz, cavity decay 3 MHz, magnon decay 0.6 MHz, mechanical damping
100 Hz, cavity-magnon coupling equal to the cavity decay, magnomechanical
coupling a fifth of it, squeezing 0.4, bath at 10 mK.
"""

import math

from .errors import ConfigError
from .model import TWO_PI, SystemParams
from .validity import ValidityThresholds

#: Keys settable per site (bare key applies to both sites).
SITE_KEYS = {
    "cavity_freq_hz": 10e9,
    "phonon_freq_hz": None,        # site-dependent default, see below
    "cavity_decay_hz": 3e6,
    "magnon_decay_hz": 0.6e6,
    "phonon_damp_hz": 100.0,
    "coupling_g_hz": 3e6,
    "coupling_G_hz": 0.6e6,
    "bare_G0_hz": 0.05,
    "sphere_diameter_m": 250e-6,
    "kerr_hz": 6.4e-9,
}

_SITE_DEFAULTS = {
    "site1.phonon_freq_hz": 10e6,
    "site2.phonon_freq_hz": 12e6,
}

#: Global scalar keys.
GLOBAL_KEYS = {
    "squeeze_r": 0.4,
    "squeeze_phase_rad": 0.0,
    "bath_temp_mk": 10.0,
}

#: Optional keys recognized but absent from the defaults.
OPTIONAL_KEYS = (
    "bath_temp_k",
    "axis1.path", "axis1.start", "axis1.stop", "axis1.points", "axis1.scale",
    "axis2.path", "axis2.start", "axis2.stop", "axis2.points", "axis2.scale",
    "output.pairs", "output.validity",
    "validity.excitation_threshold", "validity.shift_threshold",
    "validity.kerr_threshold", "validity.kerr_warn", "validity.rwa_threshold",
    "oracle.horizon_factor", "oracle.dt_factor", "oracle.report_cadence",
)

_STRING_KEYS = {"axis1.path", "axis1.scale", "axis2.path", "axis2.scale", "output.pairs"}
_BOOL_KEYS = {"output.validity"}
_INT_KEYS = {"axis1.points", "axis2.points", "oracle.report_cadence"}

#: Model keys a sweep axis may address (bare or site-prefixed).
SWEEPABLE = set(SITE_KEYS) | {"squeeze_r", "squeeze_phase_rad", "bath_temp_mk", "bath_temp_k"}


def default_config():
    """Fresh copy of the built-in defaults as a flat dict."""
    cfg = dict(GLOBAL_KEYS)
    for key, value in SITE_KEYS.items():
        if value is not None:
            cfg[key] = value
    cfg.update(_SITE_DEFAULTS)
    return cfg


def known_keys():
    keys = set(GLOBAL_KEYS) | set(OPTIONAL_KEYS)
    for key in SITE_KEYS:
        keys.add(key)
        keys.add(f"site1.{key}")
        keys.add(f"site2.{key}")
    return keys


def _parse_value(key, raw):
    raw = raw.strip()
    if key in _STRING_KEYS:
        return raw
    if key in _BOOL_KEYS:
        low = raw.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ConfigError(f"{key}: expected true/false, got {raw!r}")
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite, got {raw!r}")
    return value


def parse_config_text(text, source="<config>"):
    """Parse ``key = value`` lines into a dict; unknown keys are rejected."""
    out = {}
    valid = known_keys()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in valid:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        out[key] = _parse_value(key, raw)
    return out


def parse_config_file(path):
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config_text(text, source=str(path))


def parse_overrides(pairs):
    """Parse repeated ``key=value`` command line overrides."""
    out = {}
    valid = known_keys()
    for item in pairs:
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected key=value")
        key, raw = (part.strip() for part in item.split("=", 1))
        if key not in valid:
            raise ConfigError(f"override: unknown key {key!r}")
        out[key] = _parse_value(key, raw)
    return out


def resolve(*layers):
    """Merge config layers (later wins) over the defaults."""
    cfg = default_config()
    for layer in layers:
        if layer:
            cfg.update(layer)
    if "bath_temp_k" in cfg and any("bath_temp_mk" in layer for layer in layers if layer):
        raise ConfigError("give bath_temp_mk or bath_temp_k, not both")
    return cfg


def _site_value(cfg, key, site):
    sited = f"site{site}.{key}"
    if sited in cfg:
        return cfg[sited]
    if key in cfg:
        return cfg[key]
    raise ConfigError(f"missing value for {sited}")


def resolved_site_view(cfg):
    """Fully sited view of the model keys, plus the global ones.

    This is what output headers embed: every per-site key spelled out, so
    a result file is reproducible without the defaults table.
    """
    view = {}
    for key in SITE_KEYS:
        for site in (1, 2):
            view[f"site{site}.{key}"] = _site_value(cfg, key, site)
    view["squeeze_r"] = cfg["squeeze_r"]
    view["squeeze_phase_rad"] = cfg["squeeze_phase_rad"]
    if "bath_temp_k" in cfg:
        view["bath_temp_k"] = cfg["bath_temp_k"]
    else:
        view["bath_temp_mk"] = cfg["bath_temp_mk"]
    for key in sorted(cfg):
        if key.startswith(("axis1.", "axis2.", "output.", "validity.", "oracle.")):
            view[key] = cfg[key]
    return view


def params_from_config(cfg):
    """Build a ``SystemParams`` from a resolved flat config dict.

    Frequencies arrive in Hz and leave in rad/s; the drive frequencies are
    placed on the red sideband and the magnon and squeezing frequencies on
    cavity resonance, which is the regime the linearized model encodes.
    """
    def site_pair(key):
        return tuple(_site_value(cfg, key, site) for site in (1, 2))

    cavity_freq = tuple(TWO_PI * v for v in site_pair("cavity_freq_hz"))
    phonon_freq = tuple(TWO_PI * v for v in site_pair("phonon_freq_hz"))
    if "bath_temp_k" in cfg:
        temp = float(cfg["bath_temp_k"])
    else:
        temp = float(cfg["bath_temp_mk"]) * 1e-3

    try:
        return SystemParams(
            cavity_freq=cavity_freq,
            magnon_freq=cavity_freq,
            squeeze_freq=cavity_freq,
            phonon_freq=phonon_freq,
            drive_freq=tuple(cavity_freq[j] - phonon_freq[j] for j in range(2)),
            cavity_decay=tuple(TWO_PI * v for v in site_pair("cavity_decay_hz")),
            magnon_decay=tuple(TWO_PI * v for v in site_pair("magnon_decay_hz")),
            phonon_damp=tuple(TWO_PI * v for v in site_pair("phonon_damp_hz")),
            cavity_magnon_coupling=tuple(TWO_PI * v for v in site_pair("coupling_g_hz")),
            magnomech_coupling=tuple(TWO_PI * v for v in site_pair("coupling_G_hz")),
            single_magnon_coupling=tuple(TWO_PI * v for v in site_pair("bare_G0_hz")),
            squeeze_r=float(cfg["squeeze_r"]),
            squeeze_phase=float(cfg["squeeze_phase_rad"]),
            bath_temp=temp,
            sphere_diameter=site_pair("sphere_diameter_m"),
            kerr_coeff=tuple(TWO_PI * v for v in site_pair("kerr_hz")),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid parameter combination: {exc}") from None


def thresholds_from_config(cfg):
    """Validity thresholds, with config overrides applied."""
    base = ValidityThresholds()
    return ValidityThresholds(
        excitation=cfg.get("validity.excitation_threshold", base.excitation),
        shift=cfg.get("validity.shift_threshold", base.shift),
        kerr=cfg.get("validity.kerr_threshold", base.kerr),
        kerr_warn=cfg.get("validity.kerr_warn", base.kerr_warn),
        rwa=cfg.get("validity.rwa_threshold", base.rwa),
    )


def default_params(**config_overrides):
    """Parameter set at the built-in defaults, with flat-key overrides.

    Example: ``default_params(squeeze_r=0.1, bath_temp_mk=50)``.
    """
    unknown = set(config_overrides) - known_keys()
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    return params_from_config(resolve(config_overrides))
