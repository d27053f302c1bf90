"""Gaussian pulse broadening under group-velocity dispersion.

Covers the D -> beta2 conversion, single-segment broadening with chirp,
multi-segment propagation through a pre-compensation element plus the
transmission fiber, the gated pulse-energy fraction, the neighbor-gate
overlap (inter-symbol interference), and the highest repetition rate
compatible with a target overlap.

Sign convention: beta2 = -D*lambda^2/(2*pi*c), so anomalous dispersion
(D > 0 at 1550 nm) gives beta2 < 0.  Pre-compensation works by summing
signed beta2*length contributions; the pulse width of an initially
unchirped Gaussian depends only on that accumulated sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .erf import erf, erfc
from .phys_core import SPEED_OF_LIGHT_NM_PS, LinkScenario

_LN2 = math.log(2.0)
_SQRT_LN2 = math.sqrt(_LN2)
# FWHM = 2*sqrt(ln2) * (1/e intensity half-width)
_FWHM_SQ_TO_TAU0_SQ = 1.0 / (4.0 * _LN2)

#: Lower bracket of the repetition-rate solve (1 MHz).
MIN_REP_RATE_GHZ = 1e-3


def beta2_from_D(dispersion_ps_nm_km: float, wavelength_nm: float) -> float:
    """GVD parameter beta2 in ps^2/km from the engineering dispersion D."""
    if wavelength_nm <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength_nm} nm")
    return -dispersion_ps_nm_km * wavelength_nm**2 / (2.0 * math.pi * SPEED_OF_LIGHT_NM_PS)


def dispersion_length(input_fwhm_ps: float, beta2_ps2_km: float) -> float:
    """Distance over which an unchirped Gaussian broadens by sqrt(2), in km."""
    if input_fwhm_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {input_fwhm_ps} ps")
    if beta2_ps2_km == 0.0:
        return math.inf
    return input_fwhm_ps**2 / (4.0 * _LN2 * abs(beta2_ps2_km))


def _width_ratio(input_fwhm_ps: float, chirp: float, gvd_ps2: float) -> float:
    # gvd_ps2 is the accumulated beta2*length; b is its size relative to
    # the squared 1/e half-width tau0^2 = fwhm^2/(4 ln2)
    b = gvd_ps2 / (input_fwhm_ps**2 * _FWHM_SQ_TO_TAU0_SQ)
    return math.hypot(1.0 + chirp * b, b)


def broadening_ratio(
    input_fwhm_ps: float, chirp: float, beta2_ps2_km: float, length_km: float
) -> float:
    """FWHM ratio out/in for a chirped Gaussian after one fiber segment."""
    if input_fwhm_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {input_fwhm_ps} ps")
    if length_km < 0.0:
        raise ValueError(f"segment length must be >= 0 km, got {length_km}")
    return _width_ratio(input_fwhm_ps, chirp, beta2_ps2_km * length_km)


@dataclass(frozen=True)
class PulseState:
    """Gaussian pulse description after some accumulated dispersion.

    accumulated_gvd_ps2 is the signed sum of beta2*length over all
    traversed segments; output_fwhm_ps is derived from it.
    """

    input_fwhm_ps: float
    input_chirp: float
    accumulated_gvd_ps2: float
    output_fwhm_ps: float = 0.0  # derived

    def __post_init__(self) -> None:
        if self.input_fwhm_ps <= 0.0:
            raise ValueError(f"pulse FWHM must be positive, got {self.input_fwhm_ps} ps")
        ratio = _width_ratio(self.input_fwhm_ps, self.input_chirp, self.accumulated_gvd_ps2)
        object.__setattr__(self, "output_fwhm_ps", self.input_fwhm_ps * ratio)


def pulse_width_at(
    input_fwhm_ps: float,
    segments: list[tuple[float, float]],
    z_km: float,
) -> float:
    """FWHM in ps at position ``z_km`` into the last of ``segments``.

    Each segment is (beta2 in ps^2/km, length in km); all segments but
    the last are traversed fully.  The pulse enters the first segment
    unchirped, so the width depends only on the accumulated GVD.
    """
    if input_fwhm_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {input_fwhm_ps} ps")
    if not segments:
        if z_km != 0.0:
            raise ValueError("no segments to propagate into")
        return input_fwhm_ps
    last_len = segments[-1][1]
    if not 0.0 <= z_km <= last_len:
        raise ValueError(f"z = {z_km} km outside the last segment [0, {last_len}] km")
    gvd = sum(b2 * length for b2, length in segments[:-1])
    gvd += segments[-1][0] * z_km
    return input_fwhm_ps * _width_ratio(input_fwhm_ps, 0.0, gvd)


def gaussian_intensity(fwhm_ps: float, t_ps: float) -> float:
    """Unit-energy Gaussian pulse intensity of the given FWHM, in 1/ps."""
    if fwhm_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {fwhm_ps} ps")
    u = t_ps / fwhm_ps
    return (2.0 * _SQRT_LN2 / (math.sqrt(math.pi) * fwhm_ps)) * math.exp(-4.0 * _LN2 * u * u)


def t_isi(gate_ns: float, fwhm_out_ps: float) -> float:
    """Fraction of the broadened pulse energy inside its own detection gate."""
    if gate_ns < 0.0:
        raise ValueError(f"gate duration must be >= 0 ns, got {gate_ns}")
    if fwhm_out_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {fwhm_out_ps} ps")
    return erf(_SQRT_LN2 * gate_ns * 1e3 / fwhm_out_ps)


def f_err_isi_exact(period_ps: float, gate_ps: float, fwhm_out_ps: float) -> float:
    """Pulse-energy fraction falling into the nearest neighbor's gate,
    integrated exactly over [T - gate/2, T + gate/2]."""
    if not period_ps > gate_ps / 2.0 > 0.0:
        raise ValueError(
            f"need T > gate/2 > 0, got T = {period_ps} ps, gate = {gate_ps} ps"
        )
    if fwhm_out_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {fwhm_out_ps} ps")
    k = _SQRT_LN2 / fwhm_out_ps
    return 0.5 * (erfc(k * (2.0 * period_ps - gate_ps)) - erfc(k * (2.0 * period_ps + gate_ps)))


def f_err_isi_approx(f_rep_ghz: float, gate_ps: float, fwhm_out_ps: float) -> float:
    """Single-tail approximation of the neighbor-gate overlap,
    (1/2) erfc[sqrt(ln2)/fwhm * (2T - gate)]."""
    if f_rep_ghz <= 0.0:
        raise ValueError(f"repetition rate must be positive, got {f_rep_ghz} GHz")
    two_periods_ps = 2.0e3 / f_rep_ghz
    if gate_ps >= two_periods_ps:
        raise ValueError(
            f"gate ({gate_ps} ps) must be shorter than two pulse periods "
            f"({two_periods_ps} ps)"
        )
    if fwhm_out_ps <= 0.0:
        raise ValueError(f"pulse FWHM must be positive, got {fwhm_out_ps} ps")
    return 0.5 * erfc(_SQRT_LN2 * (two_periods_ps - gate_ps) / fwhm_out_ps)


def gvd_segments(scenario: LinkScenario) -> list[tuple[float, float]]:
    """(beta2, length) segments of the optical path, pre-compensation first."""
    wavelength = scenario.protocol.quantum_wavelength_nm
    segments: list[tuple[float, float]] = []
    if scenario.precomp is not None and scenario.precomp.dcf_length_km > 0.0:
        segments.append(
            (
                beta2_from_D(scenario.precomp.dcf_fiber.dispersion_ps_nm_km, wavelength),
                scenario.precomp.dcf_length_km,
            )
        )
    segments.append(
        (beta2_from_D(scenario.fiber.dispersion_ps_nm_km, wavelength), scenario.length_km)
    )
    return segments


def detector_pulse_width(scenario: LinkScenario, f_rep_ghz: float) -> float:
    """Pulse FWHM in ps arriving at the detector for a given repetition rate,
    with the input width tied to the period by the protocol's pulse fraction."""
    period_ps = 1e3 / f_rep_ghz
    input_fwhm = scenario.protocol.pulse_fraction * period_ps
    segments = gvd_segments(scenario)
    return pulse_width_at(input_fwhm, segments, segments[-1][1])


def _isi_overlap_at(scenario: LinkScenario, f_rep_ghz: float) -> float:
    gate_ps = scenario.protocol.gate_fraction * 1e3 / f_rep_ghz
    return f_err_isi_approx(f_rep_ghz, gate_ps, detector_pulse_width(scenario, f_rep_ghz))


def max_rep_rate(scenario: LinkScenario, tol_ghz: float = 1e-4, max_iter: int = 200) -> float:
    """Largest repetition rate (GHz, capped by the protocol) whose
    neighbor-gate overlap stays at or below the protocol's ISI target.

    The overlap is monotone non-decreasing in f_rep (a faster clock means
    a shorter input pulse, hence a wider far-field pulse and a smaller
    guard interval), so a bisection on [1 MHz, cap] finds the boundary.
    Returns the lower bracket if even 1 MHz violates the target.
    """
    cap = scenario.protocol.rep_rate_cap_ghz
    target = scenario.protocol.isi_error_target
    if _isi_overlap_at(scenario, cap) <= target:
        return cap
    lo = MIN_REP_RATE_GHZ
    if _isi_overlap_at(scenario, lo) > target:
        return lo
    hi = cap
    for _ in range(max_iter):
        if hi - lo <= tol_ghz:
            break
        mid = 0.5 * (lo + hi)
        if _isi_overlap_at(scenario, mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo
