"""Scalar optimizations over the link model: mean photon number, pulse
repetition rate selection, DCF sizing, and reach.

The secret rate as a function of mu rises from zero (no signal) and is
eventually killed by the eavesdropper-information term, which grows
linearly in mu, so a logarithmic grid scan followed by golden-section
refinement finds the interior maximum reliably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .dispersion import detector_pulse_width, f_err_isi_approx, max_rep_rate, t_isi
from .noise_model import classical_noise_probs, dark_count_prob
from .phys_core import FiberSpec, LinkScenario
from .qkd_metrics import DetectionBudget, KeyRateReport, key_rates

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

MU_SEARCH_MIN = 1e-4
#: Upper bound of the mu search; the security estimate assumes at most
#: one photon reaches Bob per bit, and the rate margin is negative well
#: below this in practice.
MU_SEARCH_MAX = 2.0


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of the per-point mean-photon-number optimization."""

    mu_opt: Optional[float]
    r_sec_opt: float
    f_rep_ghz: float
    converged: bool
    evaluations: int


@dataclass(frozen=True)
class _LinkContext:
    """Everything about one (scenario, f_rep) pair that does not depend
    on the mean photon number."""

    scenario: LinkScenario
    f_rep_ghz: float
    gate_ns: float
    pulse_fwhm_out_ps: float
    t_isi_factor: float
    isi_overlap: float
    t_f: float
    t_il_lin: float
    t_b_lin: float
    p_ram_f: float
    p_ram_b: float
    p_lcxt: float
    p_dc: float

    def budget_for_mu(self, mu: float) -> DetectionBudget:
        det = self.scenario.detector
        return DetectionBudget.build(
            mu=mu,
            t_f=self.t_f,
            t_il_lin=self.t_il_lin,
            t_b_lin=self.t_b_lin,
            efficiency=det.efficiency,
            t_isi_factor=self.t_isi_factor,
            isi_overlap=self.isi_overlap,
            p_ram_f=self.p_ram_f,
            p_ram_b=self.p_ram_b,
            p_lcxt=self.p_lcxt,
            p_dc=self.p_dc,
            afterpulse_ratio=det.afterpulse_ratio,
            detector_count=det.detector_count,
            f_rep_ghz=self.f_rep_ghz,
            gate_ns=self.gate_ns,
            pulse_fwhm_out_ps=self.pulse_fwhm_out_ps,
        )

    def report_for_mu(self, mu: float) -> KeyRateReport:
        return key_rates(self.budget_for_mu(mu), self.scenario.protocol, self.scenario.detector)


def link_context(scenario: LinkScenario, f_rep_ghz: float) -> _LinkContext:
    if f_rep_ghz <= 0.0:
        raise ValueError(f"repetition rate must be positive, got {f_rep_ghz} GHz")
    proto = scenario.protocol
    det = scenario.detector
    gate_ns = proto.gate_fraction / f_rep_ghz
    fwhm_out = detector_pulse_width(scenario, f_rep_ghz)
    p_ram_f, p_ram_b, p_lcxt = classical_noise_probs(
        scenario.classical,
        scenario.fiber.attenuation_db_per_km,
        scenario.length_km,
        proto.quantum_wavelength_nm,
        det.efficiency,
        gate_ns,
    )
    return _LinkContext(
        scenario=scenario,
        f_rep_ghz=f_rep_ghz,
        gate_ns=gate_ns,
        pulse_fwhm_out_ps=fwhm_out,
        t_isi_factor=t_isi(gate_ns, fwhm_out),
        isi_overlap=f_err_isi_approx(f_rep_ghz, gate_ns * 1e3, fwhm_out),
        t_f=scenario.fiber.transmission(scenario.length_km),
        t_il_lin=scenario.wdm_transmission,
        t_b_lin=det.internal_transmission,
        p_ram_f=p_ram_f,
        p_ram_b=p_ram_b,
        p_lcxt=p_lcxt,
        p_dc=dark_count_prob(det.dark_count_rate_per_ns, gate_ns),
    )


def evaluate_at_mu(scenario: LinkScenario, f_rep_ghz: float, mu: float) -> KeyRateReport:
    """Full key-rate report at an explicitly chosen mean photon number."""
    return link_context(scenario, f_rep_ghz).report_for_mu(mu)


def optimize_mu(
    scenario: LinkScenario, f_rep_ghz: float, grid_points: int = 64
) -> OptimizationResult:
    """Maximize the secret key rate over mu in [1e-4, 2].

    A ``grid_points``-long logarithmic scan seeds a golden-section
    refinement between the neighbors of the best grid point.  When no
    grid point yields a positive rate the result carries no mu claim.
    """
    if grid_points < 3:
        raise ValueError(f"grid needs at least 3 points, got {grid_points}")
    ctx = link_context(scenario, f_rep_ghz)
    evaluations = 0

    def r_sec(mu: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return ctx.report_for_mu(mu).r_sec_bps

    log_lo = math.log(MU_SEARCH_MIN)
    log_hi = math.log(MU_SEARCH_MAX)
    grid = [
        math.exp(log_lo + (log_hi - log_lo) * i / (grid_points - 1))
        for i in range(grid_points)
    ]
    values = [r_sec(mu) for mu in grid]
    best_i = max(range(grid_points), key=values.__getitem__)
    if values[best_i] <= 0.0:
        return OptimizationResult(
            mu_opt=None,
            r_sec_opt=0.0,
            f_rep_ghz=f_rep_ghz,
            converged=True,
            evaluations=evaluations,
        )

    a = grid[max(best_i - 1, 0)]
    b = grid[min(best_i + 1, grid_points - 1)]
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = r_sec(x1), r_sec(x2)
    for _ in range(80):
        if b - a <= 1e-7 * max(b, 1.0):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = r_sec(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = r_sec(x1)
    candidates = [(values[best_i], grid[best_i]), (f1, x1), (f2, x2)]
    r_best, mu_best = max(candidates)
    return OptimizationResult(
        mu_opt=mu_best,
        r_sec_opt=r_best,
        f_rep_ghz=f_rep_ghz,
        converged=True,
        evaluations=evaluations,
    )


def dcf_length_for_reach(target_km: float, fiber: FiberSpec, dcf: FiberSpec) -> float:
    """DCF length (km) whose accumulated dispersion cancels ``target_km``
    of the transmission fiber."""
    if dcf.dispersion_ps_nm_km == 0.0:
        raise ValueError("DCF dispersion must be nonzero")
    if dcf.dispersion_ps_nm_km * fiber.dispersion_ps_nm_km >= 0.0:
        raise ValueError(
            "DCF dispersion must be opposite in sign to the fiber's "
            f"({dcf.dispersion_ps_nm_km} vs {fiber.dispersion_ps_nm_km} ps/nm/km)"
        )
    if target_km < 0.0:
        raise ValueError(f"target length must be >= 0 km, got {target_km}")
    return target_km * abs(fiber.dispersion_ps_nm_km) / abs(dcf.dispersion_ps_nm_km)


def evaluate_point(scenario: LinkScenario) -> KeyRateReport:
    """Evaluate one link length end to end: pick the repetition rate from
    the ISI constraint, optimize the mean photon number, and report."""
    f_rep = max_rep_rate(scenario)
    opt = optimize_mu(scenario, f_rep)
    ctx = link_context(scenario, f_rep)
    if opt.mu_opt is None:
        return KeyRateReport(
            qber=None,
            r_raw_bps=None,
            r_sift_bps=None,
            r_sec_bps=0.0,
            i_ab=None,
            i_ae=None,
            eta_dead=None,
            mu_opt=None,
            f_rep_ghz=f_rep,
            pulse_fwhm_out_ps=ctx.pulse_fwhm_out_ps,
            sec_clamped=True,
            budget=None,
        )
    return ctx.report_for_mu(opt.mu_opt)


def reach(scenario: LinkScenario, skr_floor_bps: float) -> float:
    """Largest fiber length (km, to 0.1 km) at which the secret rate stays
    at or above ``skr_floor_bps`` with the QBER below threshold.

    A 5 km scan locates the final crossing (the rate need not be
    monotone near a pre-compensation point), then bisection refines it.
    The scan is bounded by where an upper envelope of the secret rate,
    0.5 * f_cap * duty * mu_max * t_F * t_IL * t_B * eta, falls below the
    floor; beyond that no length can qualify.
    """
    if skr_floor_bps <= 0.0:
        raise ValueError(f"secret-rate floor must be positive, got {skr_floor_bps}")
    proto = scenario.protocol
    det = scenario.detector
    envelope_0 = (
        0.5
        * proto.rep_rate_cap_ghz
        * 1e9
        * proto.duty_cycle
        * MU_SEARCH_MAX
        * scenario.wdm_transmission
        * det.internal_transmission
        * det.efficiency
    )
    if envelope_0 < skr_floor_bps:
        return 0.0
    scan_max = (
        10.0
        * math.log10(envelope_0 / skr_floor_bps)
        / scenario.fiber.attenuation_db_per_km
    )

    def meets_floor(length_km: float) -> bool:
        report = evaluate_point(replace(scenario, length_km=length_km))
        return (
            report.r_sec_bps >= skr_floor_bps
            and report.qber is not None
            and report.qber <= proto.qber_threshold
        )

    step = 5.0
    n_steps = int(math.ceil(scan_max / step))
    last_ok = None
    for i in range(n_steps + 1):
        if meets_floor(i * step):
            last_ok = i * step
    if last_ok is None:
        return 0.0

    lo, hi = last_ok, last_ok + step
    while hi - lo > 0.1:
        mid = 0.5 * (lo + hi)
        if meets_floor(mid):
            lo = mid
        else:
            hi = mid
    return lo
