"""Non-signal detection probabilities per detector gate.

Spontaneous Raman scattering from co- and counter-propagating classical
channels, linear crosstalk through finite WDM isolation, dark counts,
and after-pulses.  All probabilities are per gate and dimensionless;
optical powers are in watts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .phys_core import (
    ClassicalChannelSpec,
    attenuation_per_km,
    db_to_linear,
    photon_energy,
)


def launch_power(receiver_sensitivity_dbm: float, wdm_insertion_loss_db: float) -> float:
    """Classical per-channel power at the fiber output, in watts.

    The transmitter is assumed to launch just enough that the receiver,
    sitting behind the WDM demux, sees exactly its sensitivity: the
    fiber-output power is R_x + t_IL in dBm.
    """
    return 10.0 ** ((receiver_sensitivity_dbm + wdm_insertion_loss_db) / 10.0) * 1e-3


def _backscatter_length_km(alpha_per_km: float, length_km: float) -> float:
    # sinh(alpha*L)/alpha, with a series for small alpha*L so alpha -> 0
    # degrades gracefully to L instead of 0/0
    x = alpha_per_km * length_km
    if x < 1e-6:
        return length_km * (1.0 + x * x / 6.0)
    return math.sinh(x) / alpha_per_km


def raman_powers(
    p_out_w: float,
    n_forward: int,
    n_backward: int,
    attenuation_db_per_km: float,
    length_km: float,
    cross_section_per_km_nm: float,
    bandwidth_nm: float,
) -> tuple[float, float]:
    """Forward and backward spontaneous-Raman powers (W) reaching the
    quantum receiver, for classical channels of fiber-output power p_out_w."""
    if length_km < 0.0:
        raise ValueError(f"fiber length must be >= 0 km, got {length_km}")
    alpha = attenuation_per_km(attenuation_db_per_km)
    spectral = cross_section_per_km_nm * bandwidth_nm
    p_fwd = n_forward * p_out_w * length_km * spectral
    p_bwd = n_backward * p_out_w * _backscatter_length_km(alpha, length_km) * spectral
    return p_fwd, p_bwd


def detection_prob_from_power(
    power_w: float, wavelength_nm: float, efficiency: float, gate_ns: float
) -> float:
    """Per-gate detection probability of a continuous optical power."""
    if power_w < 0.0 or efficiency < 0.0 or gate_ns < 0.0:
        raise ValueError("power, efficiency and gate duration must all be >= 0")
    return power_w / photon_energy(wavelength_nm) * efficiency * gate_ns * 1e-9


def lcxt_prob(
    p_out_w: float,
    n_forward: int,
    isolation_nonadjacent_db: float,
    wavelength_nm: float,
    efficiency: float,
    gate_ns: float,
) -> float:
    """Linear-crosstalk detection probability per gate.

    Only co-propagating channels leak into the quantum demux port, and
    the quantum channel sits at least two channel spacings away from the
    nearest classical one, so the non-adjacent isolation applies.
    """
    if isolation_nonadjacent_db <= 0.0:
        raise ValueError(
            f"isolation must be > 0 dB, got {isolation_nonadjacent_db}"
        )
    leak_w = n_forward * p_out_w * db_to_linear(isolation_nonadjacent_db)
    return detection_prob_from_power(leak_w, wavelength_nm, efficiency, gate_ns)


def dark_count_prob(rate_per_ns: float, gate_ns: float) -> float:
    """Dark-count probability per gate."""
    if rate_per_ns < 0.0 or gate_ns < 0.0:
        raise ValueError("dark-count rate and gate duration must be >= 0")
    return rate_per_ns * gate_ns


def afterpulse_prob(afterpulse_ratio: float, other_probs_sum: float) -> float:
    """After-pulse probability per gate, defined so that it makes up
    exactly ``afterpulse_ratio`` of the total detection probability."""
    if not 0.0 <= afterpulse_ratio < 1.0:
        raise ValueError(f"afterpulse ratio must be in [0,1), got {afterpulse_ratio}")
    if other_probs_sum < 0.0:
        raise ValueError("detection probability sum must be >= 0")
    return afterpulse_ratio / (1.0 - afterpulse_ratio) * other_probs_sum


@dataclass(frozen=True)
class NoiseBudget:
    """All non-signal detection probabilities per gate."""

    p_ram_f: float
    p_ram_b: float
    p_ram: float
    p_lcxt: float
    p_dc: float
    p_ap: float

    @classmethod
    def build(
        cls, p_ram_f: float, p_ram_b: float, p_lcxt: float, p_dc: float, p_ap: float
    ) -> "NoiseBudget":
        return cls(
            p_ram_f=p_ram_f,
            p_ram_b=p_ram_b,
            p_ram=p_ram_f + p_ram_b,
            p_lcxt=p_lcxt,
            p_dc=p_dc,
            p_ap=p_ap,
        )


def classical_noise_probs(
    classical: Optional[ClassicalChannelSpec],
    attenuation_db_per_km: float,
    length_km: float,
    wavelength_nm: float,
    efficiency: float,
    gate_ns: float,
) -> tuple[float, float, float]:
    """(p_ram_f, p_ram_b, p_lcxt) per gate; zeros without classical channels."""
    if classical is None:
        return 0.0, 0.0, 0.0
    p_out = launch_power(classical.receiver_sensitivity_dbm, classical.wdm_insertion_loss_db)
    w_fwd, w_bwd = raman_powers(
        p_out,
        classical.forward_count,
        classical.backward_count,
        attenuation_db_per_km,
        length_km,
        classical.raman_cross_section_per_km_nm,
        classical.receiver_bandwidth_nm,
    )
    p_ram_f = detection_prob_from_power(w_fwd, wavelength_nm, efficiency, gate_ns)
    p_ram_b = detection_prob_from_power(w_bwd, wavelength_nm, efficiency, gate_ns)
    p_xt = lcxt_prob(
        p_out,
        classical.forward_count,
        classical.isolation_nonadjacent_db,
        wavelength_nm,
        efficiency,
        gate_ns,
    )
    return p_ram_f, p_ram_b, p_xt
