"""Performance model for high-bit-rate QKD links over dispersive fiber."""

from .config import SWEEP_COLUMNS, ConfigError, SweepRequest, load_config
from .dispersion import (
    PulseState,
    beta2_from_D,
    broadening_ratio,
    detector_pulse_width,
    dispersion_length,
    f_err_isi_approx,
    f_err_isi_exact,
    gaussian_intensity,
    max_rep_rate,
    pulse_width_at,
    t_isi,
)
from .erf import erf, erfc
from .noise_model import (
    NoiseBudget,
    afterpulse_prob,
    dark_count_prob,
    detection_prob_from_power,
    launch_power,
    lcxt_prob,
    raman_powers,
)
from .optimize import (
    OptimizationResult,
    dcf_length_for_reach,
    evaluate_at_mu,
    evaluate_point,
    optimize_mu,
    reach,
)
from .phys_core import (
    ClassicalChannelSpec,
    DetectorSpec,
    FiberSpec,
    LinkScenario,
    PrecompSpec,
    ProtocolSpec,
    db_to_linear,
    fiber_transmission,
    linear_to_db,
    min_skr_threshold,
    photon_energy,
)
from .presets import FIBER_PRESETS, default_classical, default_detector, default_protocol, fiber_preset
from .qkd_metrics import (
    DetectionBudget,
    KeyRateReport,
    dead_time_factor,
    i_ab,
    i_ae_cow,
    isi_error_detection_prob,
    key_rates,
    qber_cow,
    shannon_entropy,
    signal_prob,
)
from .sweep import run_sweep, sweep_row, write_csv, write_json

__version__ = "0.1.0"

__all__ = [
    "ClassicalChannelSpec",
    "ConfigError",
    "DetectionBudget",
    "DetectorSpec",
    "FIBER_PRESETS",
    "FiberSpec",
    "KeyRateReport",
    "LinkScenario",
    "NoiseBudget",
    "OptimizationResult",
    "PrecompSpec",
    "ProtocolSpec",
    "PulseState",
    "SWEEP_COLUMNS",
    "SweepRequest",
    "afterpulse_prob",
    "beta2_from_D",
    "broadening_ratio",
    "dark_count_prob",
    "db_to_linear",
    "dcf_length_for_reach",
    "dead_time_factor",
    "default_classical",
    "default_detector",
    "default_protocol",
    "detection_prob_from_power",
    "detector_pulse_width",
    "dispersion_length",
    "erf",
    "erfc",
    "evaluate_at_mu",
    "evaluate_point",
    "f_err_isi_approx",
    "f_err_isi_exact",
    "fiber_preset",
    "fiber_transmission",
    "gaussian_intensity",
    "i_ab",
    "i_ae_cow",
    "isi_error_detection_prob",
    "key_rates",
    "launch_power",
    "lcxt_prob",
    "linear_to_db",
    "load_config",
    "max_rep_rate",
    "min_skr_threshold",
    "optimize_mu",
    "photon_energy",
    "pulse_width_at",
    "qber_cow",
    "raman_powers",
    "reach",
    "run_sweep",
    "shannon_entropy",
    "signal_prob",
    "sweep_row",
    "t_isi",
    "write_csv",
    "write_json",
]
