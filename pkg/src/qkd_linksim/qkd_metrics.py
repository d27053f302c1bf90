"""Per-gate signal/error probabilities, QBER, and the raw -> sifted ->
secret key-rate chain for the coherent one-way protocol.

Detection probabilities compose multiplicatively from the launch photon
number mu and the linear transmission factors; rates follow by scaling
with the repetition rate, the synchronization duty cycle, and the
dead-time saturation factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .noise_model import NoiseBudget, afterpulse_prob
from .phys_core import DetectorSpec, ProtocolSpec


def isi_error_detection_prob(
    isi_overlap: float,
    mu: float,
    t_f: float,
    t_il_lin: float,
    t_b_lin: float,
    efficiency: float,
) -> float:
    """Error detection probability from pulse energy spilling into the two
    neighboring gates (hence the factor 2)."""
    return 2.0 * isi_overlap * mu * t_f * t_il_lin * t_b_lin * efficiency


def signal_prob(
    mu: float,
    t_f: float,
    t_il_lin: float,
    t_b_lin: float,
    t_isi_factor: float,
    efficiency: float,
) -> float:
    """Signal detection probability per gate."""
    return mu * t_f * t_il_lin * t_b_lin * t_isi_factor * efficiency


@dataclass(frozen=True)
class DetectionBudget:
    """Every per-gate probability and transmission factor for one
    operating point (one mu, one repetition rate)."""

    p_mu: float
    noise: NoiseBudget
    p_isi: float
    t_isi_factor: float
    t_f: float
    t_il_lin: float
    t_b_lin: float
    efficiency: float
    mu: float
    f_rep_ghz: float
    gate_ns: float
    pulse_fwhm_out_ps: float

    @classmethod
    def build(
        cls,
        mu: float,
        t_f: float,
        t_il_lin: float,
        t_b_lin: float,
        efficiency: float,
        t_isi_factor: float,
        isi_overlap: float,
        p_ram_f: float,
        p_ram_b: float,
        p_lcxt: float,
        p_dc: float,
        afterpulse_ratio: float,
        detector_count: int,
        f_rep_ghz: float,
        gate_ns: float,
        pulse_fwhm_out_ps: float,
    ) -> "DetectionBudget":
        p_mu = signal_prob(mu, t_f, t_il_lin, t_b_lin, t_isi_factor, efficiency)
        p_isi = isi_error_detection_prob(isi_overlap, mu, t_f, t_il_lin, t_b_lin, efficiency)
        # the after-pulse ratio is defined against the total detection
        # probability, so the signal term belongs in the sum
        others = p_mu + detector_count * p_dc + p_ram_f + p_ram_b + p_lcxt + p_isi
        p_ap = afterpulse_prob(afterpulse_ratio, others)
        noise = NoiseBudget.build(p_ram_f, p_ram_b, p_lcxt, p_dc, p_ap)
        return cls(
            p_mu=p_mu,
            noise=noise,
            p_isi=p_isi,
            t_isi_factor=t_isi_factor,
            t_f=t_f,
            t_il_lin=t_il_lin,
            t_b_lin=t_b_lin,
            efficiency=efficiency,
            mu=mu,
            f_rep_ghz=f_rep_ghz,
            gate_ns=gate_ns,
            pulse_fwhm_out_ps=pulse_fwhm_out_ps,
        )

    def error_probs_sum(self, detector_count: int) -> float:
        """Sum of all error-producing probabilities per gate."""
        n = self.noise
        return detector_count * n.p_dc + n.p_ap + n.p_ram + n.p_lcxt + self.p_isi

    def total_prob(self, detector_count: int) -> float:
        """Total detection probability per gate, signal included."""
        return self.p_mu + self.error_probs_sum(detector_count)


def qber_cow(budget: DetectionBudget, beta: float, detector_count: int) -> float:
    """Quantum bit error rate of the sifted key, in (0, 0.5]."""
    errors = budget.error_probs_sum(detector_count)
    denom = beta * budget.p_mu + errors
    if denom <= 0.0:
        raise ValueError("QBER undefined: no detection probability at all")
    return 0.5 * errors / denom


def shannon_entropy(p: float) -> float:
    """Binary Shannon entropy in bits, with H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0,1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def i_ab(qber: float, ec_penalty: float) -> float:
    """Mutual information per bit between Alice and Bob after error
    correction; can go negative (callers clamp the secret rate)."""
    if not 0.0 <= qber <= 0.5:
        raise ValueError(f"QBER must be in [0,0.5], got {qber}")
    return 1.0 - ec_penalty * shannon_entropy(qber)


def i_ae_cow(mu: float, t_f: float, visibility: float) -> float:
    """Eavesdropper information bound: beam-splitting on the fiber loss
    plus intercept-resend limited by the fringe visibility.  The photon
    number reaching Bob is mu*t_f."""
    if mu < 0.0:
        raise ValueError(f"mean photon number must be >= 0, got {mu}")
    if not 0.0 < t_f <= 1.0:
        raise ValueError(f"fiber transmission must be in (0,1], got {t_f}")
    if not 0.0 < visibility <= 1.0:
        raise ValueError(f"visibility must be in (0,1], got {visibility}")
    mu_bob = mu * t_f
    return mu * (1.0 - t_f) + (1.0 - visibility) * (1.0 + math.exp(-mu_bob)) / (
        2.0 * math.exp(-mu_bob)
    )


def dead_time_factor(
    total_prob: float,
    f_rep_ghz: float,
    duty_cycle: float,
    dead_time_us: float,
    detector_count: int,
) -> float:
    """Detection-rate reduction from the detectors' dead time: every click
    (signal or noise) blinds one of ``detector_count`` detectors for
    ``dead_time_us``."""
    if min(total_prob, f_rep_ghz, duty_cycle, dead_time_us) < 0.0 or detector_count < 1:
        raise ValueError("dead-time factor arguments must be non-negative")
    clicks_per_ns = total_prob * f_rep_ghz * duty_cycle
    return 1.0 / (1.0 + clicks_per_ns * dead_time_us * 1e3 / detector_count)


@dataclass(frozen=True)
class KeyRateReport:
    """Rates and diagnostics for one link operating point.

    mu-dependent fields are None when no mean photon number yields a
    positive secret rate (the link is past its cutoff).
    """

    qber: Optional[float]
    r_raw_bps: Optional[float]
    r_sift_bps: Optional[float]
    r_sec_bps: float
    i_ab: Optional[float]
    i_ae: Optional[float]
    eta_dead: Optional[float]
    mu_opt: Optional[float]
    f_rep_ghz: float
    pulse_fwhm_out_ps: float
    sec_clamped: bool
    budget: Optional[DetectionBudget] = None


def key_rates(
    budget: DetectionBudget, protocol: ProtocolSpec, detector: DetectorSpec
) -> KeyRateReport:
    """Raw, sifted, and secret key rates (b/s) for a fully specified budget.

    The secret rate is clamped to zero when the mutual-information margin
    I_AB - I_AE closes or the QBER exceeds the error-correction
    distillation limit.
    """
    n_d = detector.detector_count
    errors = budget.error_probs_sum(n_d)
    total = budget.p_mu + errors
    eta_dead = dead_time_factor(
        total, budget.f_rep_ghz, protocol.duty_cycle, detector.dead_time_us, n_d
    )
    scale = budget.f_rep_ghz * 1e9 * protocol.duty_cycle * eta_dead
    r_raw = total * scale
    r_sift = 0.5 * (protocol.beta * budget.p_mu + errors) * scale

    if total <= 0.0:
        return KeyRateReport(
            qber=None,
            r_raw_bps=0.0,
            r_sift_bps=0.0,
            r_sec_bps=0.0,
            i_ab=None,
            i_ae=None,
            eta_dead=eta_dead,
            mu_opt=budget.mu,
            f_rep_ghz=budget.f_rep_ghz,
            pulse_fwhm_out_ps=budget.pulse_fwhm_out_ps,
            sec_clamped=True,
            budget=budget,
        )

    qber = qber_cow(budget, protocol.beta, n_d)
    info_ab = i_ab(qber, protocol.ec_penalty)
    info_ae = i_ae_cow(budget.mu, budget.t_f, protocol.visibility)
    r_sec = r_sift * (info_ab - info_ae)
    clamped = r_sec <= 0.0 or qber > protocol.qber_threshold
    if clamped:
        r_sec = 0.0
    return KeyRateReport(
        qber=qber,
        r_raw_bps=r_raw,
        r_sift_bps=r_sift,
        r_sec_bps=r_sec,
        i_ab=info_ab,
        i_ae=info_ae,
        eta_dead=eta_dead,
        mu_opt=budget.mu,
        f_rep_ghz=budget.f_rep_ghz,
        pulse_fwhm_out_ps=budget.pulse_fwhm_out_ps,
        sec_clamped=clamped,
        budget=budget,
    )
