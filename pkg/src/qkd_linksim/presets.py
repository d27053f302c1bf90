"""Default model parameters and the fiber-family preset table."""

from __future__ import annotations

from .phys_core import (
    ClassicalChannelSpec,
    DetectorSpec,
    FiberSpec,
    ProtocolSpec,
)

#: Fiber families, keyed <1>..<5>: (label, loss dB/km, dispersion ps/nm/km).
FIBER_PRESETS: dict[str, FiberSpec] = {
    "EX2000": FiberSpec("EX2000", 0.16, 20.35),
    "LEAF": FiberSpec("LEAF", 0.185, 4.25),
    "LDF": FiberSpec("LDF", 0.185, 0.1),
    "SMF28E": FiberSpec("SMF28e", 0.21, 17.0),
    "DCF": FiberSpec("DCF", 0.42, -132.4),
}

_NUMBERED_LABELS = {
    "<1>": "EX2000",
    "<2>": "LEAF",
    "<3>": "LDF",
    "<4>": "SMF28E",
    "<5>": "DCF",
}

_ALIASES = {
    "SMF28": "SMF28E",
    "DSF": "LDF",
}


def fiber_preset(name: str) -> FiberSpec:
    """Look up a fiber family by name, alias, or numbered label."""
    key = name.strip().upper()
    key = _NUMBERED_LABELS.get(key, key)
    key = _ALIASES.get(key, key)
    try:
        return FIBER_PRESETS[key]
    except KeyError:
        known = ", ".join(FIBER_PRESETS)
        raise ValueError(f"unknown fiber preset {name!r}; known presets: {known}") from None


def default_detector() -> DetectorSpec:
    """SNSPD defaults."""
    return DetectorSpec()


def default_classical() -> ClassicalChannelSpec:
    """Four 100G PM-BPSK channels, two per direction."""
    return ClassicalChannelSpec()


def default_protocol() -> ProtocolSpec:
    return ProtocolSpec()
