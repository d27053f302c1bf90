"""Physical constants, unit conversions, and the shared link-description types.

Canonical internal units: km for lengths, ps for pulse times, ns for
gate/dark-count times, GHz for rates, watts for optical power, and
dimensionless linear factors for every transmission.  Fields that are
conventionally quoted in dB/dBm keep that unit in their name; the
conversion to a linear factor happens once, through the properties
provided here, never ad hoc downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

# Exact SI values (2019 redefinition).
PLANCK_J_S = 6.62607015e-34
SPEED_OF_LIGHT_M_S = 2.99792458e8
SPEED_OF_LIGHT_NM_PS = 2.99792458e5

#: Default quantum-channel wavelength in nm; h*c/lambda reproduces the
#: link budget's tabulated photon energy of 1.278818e-19 J to 5 digits.
DEFAULT_QUANTUM_WAVELENGTH_NM = 1553.3


def db_to_linear(x_db: float) -> float:
    """Transmission factor for an attenuation of ``x_db`` dB (0 dB -> 1)."""
    return 10.0 ** (-x_db / 10.0)


def linear_to_db(t: float) -> float:
    """Attenuation in dB for a linear transmission factor ``t`` in (0, 1]."""
    if t <= 0.0:
        raise ValueError(f"transmission factor must be positive, got {t}")
    return -10.0 * math.log10(t)


def fiber_transmission(attenuation_db_per_km: float, length_km: float) -> float:
    """Linear power transmission of ``length_km`` of fiber."""
    if length_km < 0.0:
        raise ValueError(f"fiber length must be >= 0 km, got {length_km}")
    return 10.0 ** (-attenuation_db_per_km * length_km / 10.0)


def attenuation_per_km(attenuation_db_per_km: float) -> float:
    """Convert a dB/km attenuation to the linear coefficient in 1/km."""
    return attenuation_db_per_km * math.log(10.0) / 10.0


def photon_energy(wavelength_nm: float) -> float:
    """Photon energy h*c/lambda in joules."""
    if wavelength_nm <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength_nm} nm")
    return PLANCK_J_S * SPEED_OF_LIGHT_M_S / (wavelength_nm * 1e-9)


def min_skr_threshold(n_channels: int) -> float:
    """Minimum secret key rate (b/s) sustaining AES-256 refresh once per
    minute on ``n_channels`` encrypted channels: 256*N/60."""
    if n_channels < 1:
        raise ValueError(f"channel count must be >= 1, got {n_channels}")
    return 256.0 * n_channels / 60.0


@dataclass(frozen=True)
class FiberSpec:
    """One fiber family: loss and dispersion at the reference wavelength."""

    label: str
    attenuation_db_per_km: float
    dispersion_ps_nm_km: float

    def __post_init__(self) -> None:
        if self.attenuation_db_per_km <= 0.0:
            raise ValueError(
                f"fiber {self.label!r}: attenuation must be > 0 dB/km, "
                f"got {self.attenuation_db_per_km}"
            )

    def transmission(self, length_km: float) -> float:
        return fiber_transmission(self.attenuation_db_per_km, length_km)


@dataclass(frozen=True)
class DetectorSpec:
    """Single-photon detector bank at the receiver.

    efficiency: quantum detection efficiency, in (0, 1].
    dark_count_rate_per_ns: dark-count probability rate (events/ns).
    dead_time_us: blind interval after each detection, in microseconds.
    afterpulse_ratio: after-pulse fraction of the total detection
        probability, in [0, 1).
    detector_count: number of detectors (2 for the two-basis protocol).
    internal_loss_db: optical loss inside the receiver before detection.
    """

    efficiency: float = 0.014
    dark_count_rate_per_ns: float = 50e-9
    dead_time_us: float = 0.1
    afterpulse_ratio: float = 0.0
    detector_count: int = 2
    internal_loss_db: float = 2.65

    def __post_init__(self) -> None:
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"detector efficiency must be in (0,1], got {self.efficiency}")
        if self.dark_count_rate_per_ns < 0.0:
            raise ValueError("dark count rate must be >= 0")
        if self.dead_time_us < 0.0:
            raise ValueError("dead time must be >= 0")
        if not 0.0 <= self.afterpulse_ratio < 1.0:
            raise ValueError(
                f"afterpulse ratio must be in [0,1), got {self.afterpulse_ratio}"
            )
        if self.detector_count < 1:
            raise ValueError(f"detector count must be >= 1, got {self.detector_count}")
        if self.internal_loss_db < 0.0:
            raise ValueError("internal loss must be >= 0 dB")

    @property
    def internal_transmission(self) -> float:
        """Linear transmission of the receiver internals (t_B)."""
        return db_to_linear(self.internal_loss_db)


@dataclass(frozen=True)
class ClassicalChannelSpec:
    """Classical WDM channels sharing the fiber with the quantum signal.

    A scenario without this spec has no WDM infrastructure at all; a
    dark-but-present WDM is expressed with zero channel counts.
    """

    forward_count: int = 2
    backward_count: int = 2
    receiver_sensitivity_dbm: float = -50.0
    raman_cross_section_per_km_nm: float = 2e-9
    receiver_bandwidth_nm: float = 0.6
    channel_spacing_nm: float = 0.8
    isolation_adjacent_db: float = 59.0
    isolation_nonadjacent_db: float = 82.0
    wdm_insertion_loss_db: float = 1.95

    def __post_init__(self) -> None:
        if self.forward_count < 0 or self.backward_count < 0:
            raise ValueError("channel counts must be >= 0")
        if self.isolation_adjacent_db <= 0.0 or self.isolation_nonadjacent_db <= 0.0:
            raise ValueError("WDM isolations must be > 0 dB")
        if self.receiver_bandwidth_nm <= 0.0:
            raise ValueError("quantum receiver bandwidth must be > 0 nm")
        if self.raman_cross_section_per_km_nm < 0.0:
            raise ValueError("Raman cross-section must be >= 0")
        if self.wdm_insertion_loss_db < 0.0:
            raise ValueError("WDM insertion loss must be >= 0 dB")

    @property
    def wdm_transmission(self) -> float:
        """Linear transmission of the WDM insertion loss (t_IL)."""
        return db_to_linear(self.wdm_insertion_loss_db)


@dataclass(frozen=True)
class ProtocolSpec:
    """Protocol constants and operating-point conventions.

    pulse_fraction and gate_fraction tie the input pulse FWHM and the
    detector gate to the pulse period T = 1/f_rep; their ratio is held
    fixed rather than optimized.
    """

    beta: float = 1.0
    visibility: float = 0.997
    qber_threshold: float = 0.09
    ec_penalty: float = 6.0 / 5.0
    duty_cycle: float = 0.71
    isi_error_target: float = 0.001
    pulse_fraction: float = 0.15
    gate_fraction: float = 0.5
    rep_rate_cap_ghz: float = 10.0
    min_skr_bps: float = 256.0 * 2 / 60.0
    quantum_wavelength_nm: float = DEFAULT_QUANTUM_WAVELENGTH_NM

    def __post_init__(self) -> None:
        if not 0.0 < self.pulse_fraction < self.gate_fraction <= 1.0:
            raise ValueError(
                "need 0 < pulse_fraction < gate_fraction <= 1, got "
                f"{self.pulse_fraction} and {self.gate_fraction}"
            )
        if not 0.0 < self.qber_threshold < 0.5:
            raise ValueError(f"QBER threshold must be in (0,0.5), got {self.qber_threshold}")
        if self.ec_penalty < 1.0:
            raise ValueError(f"error-correction penalty must be >= 1, got {self.ec_penalty}")
        if not 0.0 < self.visibility <= 1.0:
            raise ValueError(f"visibility must be in (0,1], got {self.visibility}")
        if not 0.0 < self.duty_cycle <= 1.0:
            raise ValueError(f"duty cycle must be in (0,1], got {self.duty_cycle}")
        if self.rep_rate_cap_ghz <= 0.0:
            raise ValueError("repetition-rate cap must be > 0 GHz")
        if self.isi_error_target <= 0.0:
            raise ValueError("ISI error target must be > 0")
        if self.quantum_wavelength_nm <= 0.0:
            raise ValueError("quantum wavelength must be > 0 nm")


@dataclass(frozen=True)
class PrecompSpec:
    """Dispersion pre-compensation element placed before the attenuator,
    so it contributes accumulated dispersion but no quantum-signal loss."""

    dcf_fiber: FiberSpec
    dcf_length_km: float

    def __post_init__(self) -> None:
        if self.dcf_length_km < 0.0:
            raise ValueError(f"DCF length must be >= 0 km, got {self.dcf_length_km}")


@dataclass(frozen=True)
class LinkScenario:
    """Complete description of one link to evaluate."""

    fiber: FiberSpec
    length_km: float
    detector: DetectorSpec
    protocol: ProtocolSpec
    precomp: Optional[PrecompSpec] = None
    classical: Optional[ClassicalChannelSpec] = None

    def __post_init__(self) -> None:
        if self.length_km < 0.0:
            raise ValueError(f"link length must be >= 0 km, got {self.length_km}")
        if self.precomp is not None and self.precomp.dcf_length_km > 0.0:
            prod = (
                self.precomp.dcf_fiber.dispersion_ps_nm_km
                * self.fiber.dispersion_ps_nm_km
            )
            if prod >= 0.0:
                raise ValueError(
                    "pre-compensation dispersion must be opposite in sign to the "
                    f"transmission fiber's ({self.precomp.dcf_fiber.dispersion_ps_nm_km} "
                    f"vs {self.fiber.dispersion_ps_nm_km} ps/nm/km)"
                )

    @property
    def wdm_transmission(self) -> float:
        """t_IL of the receiver chain; 1.0 when there is no WDM."""
        return self.classical.wdm_transmission if self.classical is not None else 1.0
