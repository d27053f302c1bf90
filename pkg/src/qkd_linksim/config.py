"""Configuration ingestion: a TOML document with sections [fiber],
[precomp], [detector], [classical], [protocol], [sweep].

Unspecified keys take the model defaults; unknown keys are a hard error
so typos cannot silently fall back to defaults.  The key/type/unit
grammar is documented in the README and is the normative contract; the
TOML syntax is the carrier.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .phys_core import (
    ClassicalChannelSpec,
    DetectorSpec,
    FiberSpec,
    LinkScenario,
    PrecompSpec,
    ProtocolSpec,
)
from .presets import fiber_preset

#: Canonical sweep output columns, in emission order.
SWEEP_COLUMNS = (
    "L_km",
    "f_rep_GHz",
    "mu_opt",
    "qber",
    "r_raw_bps",
    "r_sift_bps",
    "r_sec_bps",
    "pulse_fwhm_out_ps",
    "t_isi",
    "p_mu",
    "p_dc",
    "p_ram",
    "p_lcxt",
    "p_isi",
    "eta_dead",
)


class ConfigError(ValueError):
    """Base class for configuration problems."""


class ConfigParseError(ConfigError):
    """The document is not valid TOML."""


class UnknownKeyError(ConfigError):
    """A section contains a key the schema does not define."""


class ConfigValueError(ConfigError):
    """A value has the wrong type or is out of range."""


@dataclass(frozen=True)
class SweepRequest:
    """A scenario template plus the lengths and output shape of a sweep."""

    scenario: LinkScenario
    lengths: tuple[float, ...]
    columns: tuple[str, ...]
    fmt: str


_SECTIONS = ("fiber", "precomp", "detector", "classical", "protocol", "sweep")

_FIBER_KEYS = {"preset", "label", "attenuation_db_per_km", "dispersion_ps_nm_km", "length_km"}
_PRECOMP_KEYS = {"preset", "label", "attenuation_db_per_km", "dispersion_ps_nm_km", "length_km"}
_DETECTOR_KEYS = {
    "efficiency",
    "dark_count_rate_per_ns",
    "dead_time_us",
    "afterpulse_ratio",
    "detector_count",
    "internal_loss_db",
}
_CLASSICAL_KEYS = {
    "forward_count",
    "backward_count",
    "receiver_sensitivity_dbm",
    "raman_cross_section_per_km_nm",
    "receiver_bandwidth_nm",
    "channel_spacing_nm",
    "isolation_adjacent_db",
    "isolation_nonadjacent_db",
    "wdm_insertion_loss_db",
}
_PROTOCOL_KEYS = {
    "beta",
    "visibility",
    "qber_threshold",
    "ec_penalty",
    "duty_cycle",
    "isi_error_target",
    "pulse_fraction",
    "gate_fraction",
    "rep_rate_cap_ghz",
    "min_skr_bps",
    "quantum_wavelength_nm",
}
_SWEEP_KEYS = {"start_km", "stop_km", "step_km", "lengths", "columns", "format"}


def _check_keys(section: str, table: dict, allowed: set[str]) -> None:
    for key in table:
        if key not in allowed:
            raise UnknownKeyError(
                f"unknown key {key!r} in [{section}]; allowed keys: "
                + ", ".join(sorted(allowed))
            )


def _number(section: str, table: dict, key: str, default: float) -> float:
    value = table.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValueError(f"[{section}] {key} must be a number, got {value!r}")
    return float(value)


def _integer(section: str, table: dict, key: str, default: int) -> int:
    value = table.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValueError(f"[{section}] {key} must be an integer, got {value!r}")
    return value


def _string(section: str, table: dict, key: str, default: str) -> str:
    value = table.get(key, default)
    if not isinstance(value, str):
        raise ConfigValueError(f"[{section}] {key} must be a string, got {value!r}")
    return value


def _build_fiber(section: str, table: dict, default_label: str) -> FiberSpec:
    explicit = {"attenuation_db_per_km", "dispersion_ps_nm_km"} & table.keys()
    if "preset" in table:
        if explicit:
            raise ConfigValueError(
                f"[{section}] gives both a preset and explicit fiber values; pick one"
            )
        try:
            return fiber_preset(_string(section, table, "preset", ""))
        except ValueError as exc:
            raise ConfigValueError(f"[{section}] {exc}") from None
    if explicit != {"attenuation_db_per_km", "dispersion_ps_nm_km"}:
        raise ConfigValueError(
            f"[{section}] needs either preset or both attenuation_db_per_km "
            "and dispersion_ps_nm_km"
        )
    try:
        return FiberSpec(
            label=_string(section, table, "label", default_label),
            attenuation_db_per_km=_number(section, table, "attenuation_db_per_km", 0.0),
            dispersion_ps_nm_km=_number(section, table, "dispersion_ps_nm_km", 0.0),
        )
    except ValueError as exc:
        raise ConfigValueError(f"[{section}] {exc}") from None


def _build_detector(table: dict) -> DetectorSpec:
    defaults = DetectorSpec()
    try:
        return DetectorSpec(
            efficiency=_number("detector", table, "efficiency", defaults.efficiency),
            dark_count_rate_per_ns=_number(
                "detector", table, "dark_count_rate_per_ns", defaults.dark_count_rate_per_ns
            ),
            dead_time_us=_number("detector", table, "dead_time_us", defaults.dead_time_us),
            afterpulse_ratio=_number(
                "detector", table, "afterpulse_ratio", defaults.afterpulse_ratio
            ),
            detector_count=_integer("detector", table, "detector_count", defaults.detector_count),
            internal_loss_db=_number(
                "detector", table, "internal_loss_db", defaults.internal_loss_db
            ),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigValueError(f"[detector] {exc}") from None


def _build_classical(table: dict) -> ClassicalChannelSpec:
    defaults = ClassicalChannelSpec()
    try:
        return ClassicalChannelSpec(
            forward_count=_integer("classical", table, "forward_count", defaults.forward_count),
            backward_count=_integer(
                "classical", table, "backward_count", defaults.backward_count
            ),
            receiver_sensitivity_dbm=_number(
                "classical", table, "receiver_sensitivity_dbm", defaults.receiver_sensitivity_dbm
            ),
            raman_cross_section_per_km_nm=_number(
                "classical",
                table,
                "raman_cross_section_per_km_nm",
                defaults.raman_cross_section_per_km_nm,
            ),
            receiver_bandwidth_nm=_number(
                "classical", table, "receiver_bandwidth_nm", defaults.receiver_bandwidth_nm
            ),
            channel_spacing_nm=_number(
                "classical", table, "channel_spacing_nm", defaults.channel_spacing_nm
            ),
            isolation_adjacent_db=_number(
                "classical", table, "isolation_adjacent_db", defaults.isolation_adjacent_db
            ),
            isolation_nonadjacent_db=_number(
                "classical", table, "isolation_nonadjacent_db", defaults.isolation_nonadjacent_db
            ),
            wdm_insertion_loss_db=_number(
                "classical", table, "wdm_insertion_loss_db", defaults.wdm_insertion_loss_db
            ),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigValueError(f"[classical] {exc}") from None


def _build_protocol(table: dict) -> ProtocolSpec:
    defaults = ProtocolSpec()
    try:
        return ProtocolSpec(
            beta=_number("protocol", table, "beta", defaults.beta),
            visibility=_number("protocol", table, "visibility", defaults.visibility),
            qber_threshold=_number("protocol", table, "qber_threshold", defaults.qber_threshold),
            ec_penalty=_number("protocol", table, "ec_penalty", defaults.ec_penalty),
            duty_cycle=_number("protocol", table, "duty_cycle", defaults.duty_cycle),
            isi_error_target=_number(
                "protocol", table, "isi_error_target", defaults.isi_error_target
            ),
            pulse_fraction=_number("protocol", table, "pulse_fraction", defaults.pulse_fraction),
            gate_fraction=_number("protocol", table, "gate_fraction", defaults.gate_fraction),
            rep_rate_cap_ghz=_number(
                "protocol", table, "rep_rate_cap_ghz", defaults.rep_rate_cap_ghz
            ),
            min_skr_bps=_number("protocol", table, "min_skr_bps", defaults.min_skr_bps),
            quantum_wavelength_nm=_number(
                "protocol", table, "quantum_wavelength_nm", defaults.quantum_wavelength_nm
            ),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigValueError(f"[protocol] {exc}") from None


def _build_lengths(table: dict) -> tuple[float, ...]:
    if "lengths" in table:
        if {"start_km", "stop_km", "step_km"} & table.keys():
            raise ConfigValueError(
                "[sweep] gives both an explicit length list and start/stop/step; pick one"
            )
        raw = table["lengths"]
        if not isinstance(raw, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw
        ):
            raise ConfigValueError("[sweep] lengths must be a list of numbers")
        return tuple(float(v) for v in raw)
    if not {"start_km", "stop_km"} <= table.keys():
        raise ConfigValueError("[sweep] needs either lengths or start_km/stop_km")
    start = _number("sweep", table, "start_km", 0.0)
    stop = _number("sweep", table, "stop_km", 0.0)
    step = _number("sweep", table, "step_km", 1.0)
    if step <= 0.0:
        raise ConfigValueError(f"[sweep] step_km must be > 0, got {step}")
    if start > stop:
        raise ConfigValueError(f"[sweep] start_km ({start}) must be <= stop_km ({stop})")
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(start + i * step for i in range(count))


def _build_columns(table: dict) -> tuple[str, ...]:
    if "columns" not in table:
        return SWEEP_COLUMNS
    raw = table["columns"]
    if not isinstance(raw, list) or any(not isinstance(v, str) for v in raw):
        raise ConfigValueError("[sweep] columns must be a list of column names")
    for name in raw:
        if name not in SWEEP_COLUMNS:
            raise ConfigValueError(
                f"[sweep] unknown column {name!r}; available: " + ", ".join(SWEEP_COLUMNS)
            )
    if "L_km" not in raw:
        raise ConfigValueError("[sweep] columns must include L_km")
    return tuple(raw)


def load_config(path: Union[str, Path]) -> SweepRequest:
    """Parse a scenario/sweep configuration file.

    Raises FileNotFoundError for a missing file, ConfigParseError for
    broken TOML (with the parser's line/column message), UnknownKeyError
    for keys outside the schema, and ConfigValueError for out-of-range
    or mistyped values.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise FileNotFoundError(f"config file not found: {path}") from None
    try:
        doc = tomllib.loads(raw.decode("utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise ConfigParseError(f"{path}: {exc}") from None

    for section in doc:
        if section not in _SECTIONS:
            raise UnknownKeyError(
                f"unknown section [{section}]; allowed sections: " + ", ".join(_SECTIONS)
            )
        if not isinstance(doc[section], dict):
            raise ConfigValueError(f"[{section}] must be a section, not a value")

    fiber_table = doc.get("fiber", {})
    _check_keys("fiber", fiber_table, _FIBER_KEYS)
    if not {"preset", "attenuation_db_per_km"} & fiber_table.keys():
        raise ConfigValueError("[fiber] must name a preset or give explicit fiber values")
    fiber = _build_fiber("fiber", fiber_table, "custom")
    length_km = _number("fiber", fiber_table, "length_km", 0.0)

    precomp: Optional[PrecompSpec] = None
    if "precomp" in doc:
        precomp_table = doc["precomp"]
        _check_keys("precomp", precomp_table, _PRECOMP_KEYS)
        if "length_km" not in precomp_table:
            raise ConfigValueError("[precomp] needs length_km")
        if "preset" not in precomp_table and "attenuation_db_per_km" not in precomp_table:
            precomp_table = dict(precomp_table, preset="DCF")
        try:
            precomp = PrecompSpec(
                dcf_fiber=_build_fiber("precomp", precomp_table, "dcf"),
                dcf_length_km=_number("precomp", precomp_table, "length_km", 0.0),
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigValueError(f"[precomp] {exc}") from None

    detector_table = doc.get("detector", {})
    _check_keys("detector", detector_table, _DETECTOR_KEYS)
    detector = _build_detector(detector_table)

    classical: Optional[ClassicalChannelSpec] = None
    if "classical" in doc:
        _check_keys("classical", doc["classical"], _CLASSICAL_KEYS)
        classical = _build_classical(doc["classical"])

    protocol_table = doc.get("protocol", {})
    _check_keys("protocol", protocol_table, _PROTOCOL_KEYS)
    protocol = _build_protocol(protocol_table)

    try:
        scenario = LinkScenario(
            fiber=fiber,
            length_km=length_km,
            detector=detector,
            protocol=protocol,
            precomp=precomp,
            classical=classical,
        )
    except ValueError as exc:
        raise ConfigValueError(str(exc)) from None

    lengths: tuple[float, ...] = ()
    columns = SWEEP_COLUMNS
    fmt = "csv"
    if "sweep" in doc:
        sweep_table = doc["sweep"]
        _check_keys("sweep", sweep_table, _SWEEP_KEYS)
        lengths = _build_lengths(sweep_table)
        columns = _build_columns(sweep_table)
        fmt = _string("sweep", sweep_table, "format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigValueError(f"[sweep] format must be 'csv' or 'json', got {fmt!r}")

    return SweepRequest(scenario=scenario, lengths=lengths, columns=columns, fmt=fmt)
