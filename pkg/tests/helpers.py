"""Shared scenario builders and independent oracles for the test suite.

The oracles here deliberately avoid the package's own numerics: they use
math.erf/math.erfc (the C library) and spell out every formula in one
straight line, so agreement with the package is meaningful.
"""

from __future__ import annotations

import math
from typing import Optional

from qkd_linksim import (
    ClassicalChannelSpec,
    DetectorSpec,
    FiberSpec,
    LinkScenario,
    PrecompSpec,
    ProtocolSpec,
    default_classical,
    default_detector,
    default_protocol,
    fiber_preset,
)

C_NM_PS = 2.99792458e5
LN2 = math.log(2.0)


def quadrature_erfc(x: float) -> float:
    """The defining integral, 2/sqrt(pi) * int_x^inf exp(-t^2) dt.

    The integrand beyond x + 40 is below exp(-1600), invisible at double
    precision, so a finite upper limit keeps the quadrature clean.
    """
    from scipy.integrate import quad

    val, _ = quad(
        lambda t: 2.0 / math.sqrt(math.pi) * math.exp(-t * t),
        x,
        x + 40.0,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )
    return val


def scenario(
    fiber: str | FiberSpec = "EX2000",
    length_km: float = 100.0,
    classical: bool | ClassicalChannelSpec = False,
    precomp_km: Optional[float] = None,
    detector: Optional[DetectorSpec] = None,
    protocol: Optional[ProtocolSpec] = None,
) -> LinkScenario:
    if isinstance(fiber, str):
        fiber = fiber_preset(fiber)
    precomp = None
    if precomp_km is not None:
        precomp = PrecompSpec(dcf_fiber=fiber_preset("DCF"), dcf_length_km=precomp_km)
    if classical is True:
        classical_spec: Optional[ClassicalChannelSpec] = default_classical()
    elif classical is False:
        classical_spec = None
    else:
        classical_spec = classical
    return LinkScenario(
        fiber=fiber,
        length_km=length_km,
        detector=detector or default_detector(),
        protocol=protocol or default_protocol(),
        precomp=precomp,
        classical=classical_spec,
    )


def oracle_beta2(dispersion_ps_nm_km: float, wavelength_nm: float) -> float:
    return -dispersion_ps_nm_km * wavelength_nm**2 / (2.0 * math.pi * C_NM_PS)


def oracle_width(scn: LinkScenario, f_rep_ghz: float) -> float:
    """Detector-side pulse FWHM (ps) from the accumulated-GVD closed form."""
    lam = scn.protocol.quantum_wavelength_nm
    fwhm0 = scn.protocol.pulse_fraction * 1e3 / f_rep_ghz
    gvd = 0.0
    if scn.precomp is not None:
        gvd += oracle_beta2(scn.precomp.dcf_fiber.dispersion_ps_nm_km, lam) * scn.precomp.dcf_length_km
    gvd += oracle_beta2(scn.fiber.dispersion_ps_nm_km, lam) * scn.length_km
    tau0_sq = fwhm0**2 / (4.0 * LN2)
    return fwhm0 * math.sqrt(1.0 + (gvd / tau0_sq) ** 2)


def oracle_rates(
    scn: LinkScenario, f_rep_ghz: float, mu: float
) -> tuple[float, float, float, float]:
    """Straight-line evaluation of the full detection/QBER/rate chain.

    Returns (qber, r_raw, r_sift, r_sec) in the package's units.
    """
    proto, det, cls = scn.protocol, scn.detector, scn.classical
    period_ps = 1e3 / f_rep_ghz
    gate_ns = proto.gate_fraction / f_rep_ghz
    gate_ps = gate_ns * 1e3

    width = oracle_width(scn, f_rep_ghz)
    t_isi = math.erf(math.sqrt(LN2) * gate_ps / width)
    f_err = 0.5 * math.erfc(math.sqrt(LN2) * (2.0 * period_ps - gate_ps) / width)

    t_f = 10.0 ** (-scn.fiber.attenuation_db_per_km * scn.length_km / 10.0)
    t_il = 10.0 ** (-cls.wdm_insertion_loss_db / 10.0) if cls is not None else 1.0
    t_b = 10.0 ** (-det.internal_loss_db / 10.0)
    eta = det.efficiency

    p_mu = mu * t_f * t_il * t_b * t_isi * eta
    p_isi = 2.0 * f_err * mu * t_f * t_il * t_b * eta
    p_dc = det.dark_count_rate_per_ns * gate_ns

    if cls is not None:
        p_out = 10.0 ** ((cls.receiver_sensitivity_dbm + cls.wdm_insertion_loss_db) / 10.0) * 1e-3
        alpha = scn.fiber.attenuation_db_per_km * math.log(10.0) / 10.0
        e_photon = 6.62607015e-34 * 2.99792458e8 / (proto.quantum_wavelength_nm * 1e-9)
        spectral = cls.raman_cross_section_per_km_nm * cls.receiver_bandwidth_nm
        to_prob = lambda p_w: p_w / e_photon * eta * gate_ns * 1e-9
        length = scn.length_km
        p_ram_f = to_prob(cls.forward_count * p_out * length * spectral)
        sinh_len = math.sinh(alpha * length) / alpha if alpha * length >= 1e-6 else length
        p_ram_b = to_prob(cls.backward_count * p_out * sinh_len * spectral)
        p_lcxt = to_prob(
            cls.forward_count * p_out * 10.0 ** (-cls.isolation_nonadjacent_db / 10.0)
        )
    else:
        p_ram_f = p_ram_b = p_lcxt = 0.0

    others = p_mu + det.detector_count * p_dc + p_ram_f + p_ram_b + p_lcxt + p_isi
    p_ap = det.afterpulse_ratio / (1.0 - det.afterpulse_ratio) * others
    errors = det.detector_count * p_dc + p_ap + p_ram_f + p_ram_b + p_lcxt + p_isi
    total = p_mu + errors

    qber = 0.5 * errors / (proto.beta * p_mu + errors)
    eta_dead = 1.0 / (
        1.0 + total * f_rep_ghz * proto.duty_cycle * det.dead_time_us * 1e3 / det.detector_count
    )
    scale = f_rep_ghz * 1e9 * proto.duty_cycle * eta_dead
    r_raw = total * scale
    r_sift = 0.5 * (proto.beta * p_mu + errors) * scale

    entropy = 0.0
    if 0.0 < qber < 1.0:
        entropy = -qber * math.log2(qber) - (1.0 - qber) * math.log2(1.0 - qber)
    i_ab = 1.0 - proto.ec_penalty * entropy
    mu_bob = mu * t_f
    i_ae = mu * (1.0 - t_f) + (1.0 - proto.visibility) * (1.0 + math.exp(-mu_bob)) / (
        2.0 * math.exp(-mu_bob)
    )
    r_sec = r_sift * (i_ab - i_ae)
    if r_sec < 0.0 or qber > proto.qber_threshold:
        r_sec = 0.0
    return qber, r_raw, r_sift, r_sec


def oracle_max_rep_rate(scn: LinkScenario, tol_ghz: float = 1e-4) -> float:
    """Bisection on the composed ISI condition, built on math.erfc."""
    proto = scn.protocol

    def overlap(f_ghz: float) -> float:
        gate_ps = proto.gate_fraction * 1e3 / f_ghz
        width = oracle_width(scn, f_ghz)
        return 0.5 * math.erfc(math.sqrt(LN2) * (2e3 / f_ghz - gate_ps) / width)

    cap = proto.rep_rate_cap_ghz
    if overlap(cap) <= proto.isi_error_target:
        return cap
    lo, hi = 1e-3, cap
    while hi - lo > tol_ghz:
        mid = 0.5 * (lo + hi)
        if overlap(mid) <= proto.isi_error_target:
            lo = mid
        else:
            hi = mid
    return lo
