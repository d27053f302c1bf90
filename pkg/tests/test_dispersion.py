import math

import pytest
from scipy.integrate import quad

from helpers import oracle_max_rep_rate, scenario
from qkd_linksim import (
    PulseState,
    beta2_from_D,
    broadening_ratio,
    dispersion_length,
    f_err_isi_approx,
    f_err_isi_exact,
    gaussian_intensity,
    max_rep_rate,
    pulse_width_at,
    t_isi,
)

LN2 = math.log(2.0)
C_NM_PS = 2.99792458e5


def gate_integral(fwhm_ps: float, lo_ps: float, hi_ps: float) -> float:
    """Quadrature of the Gaussian pulse intensity over a time window."""
    val, _ = quad(
        lambda t: (2.0 * math.sqrt(LN2) / (math.sqrt(math.pi) * fwhm_ps))
        * math.exp(-4.0 * LN2 * (t / fwhm_ps) ** 2),
        lo_ps,
        hi_ps,
        epsabs=1e-14,
        epsrel=1e-14,
    )
    return val


class TestBeta2:
    def test_zero_dispersion(self):
        assert beta2_from_D(0.0, 1550.0) == 0.0

    def test_smf_value(self):
        expected = -17.0 * 1550.0**2 / (2.0 * math.pi * C_NM_PS)
        assert beta2_from_D(17.0, 1550.0) == pytest.approx(expected, rel=1e-15)
        assert beta2_from_D(17.0, 1550.0) == pytest.approx(-21.68, rel=1e-3)

    def test_dcf_value(self):
        expected = 132.4 * 1550.0**2 / (2.0 * math.pi * C_NM_PS)
        assert beta2_from_D(-132.4, 1550.0) == pytest.approx(expected, rel=1e-15)
        assert beta2_from_D(-132.4, 1550.0) == pytest.approx(168.87, rel=1e-4)

    def test_sign_opposite_to_D(self):
        assert beta2_from_D(20.35, 1550.0) < 0.0
        assert beta2_from_D(-132.4, 1550.0) > 0.0


class TestDispersionLength:
    def test_ex2000_15ps(self):
        b2 = beta2_from_D(20.35, 1550.0)
        expected = 225.0 / (4.0 * LN2 * abs(b2))
        assert dispersion_length(15.0, b2) == pytest.approx(expected, rel=1e-15)
        assert dispersion_length(15.0, b2) == pytest.approx(3.127, rel=1e-3)

    def test_quadratic_scaling(self):
        b2 = beta2_from_D(20.35, 1550.0)
        assert dispersion_length(30.0, b2) == pytest.approx(
            4.0 * dispersion_length(15.0, b2), rel=1e-12
        )

    def test_no_dispersion_sentinel(self):
        assert dispersion_length(15.0, 0.0) == math.inf

    def test_rejects_bad_width(self):
        with pytest.raises(ValueError):
            dispersion_length(0.0, 1.0)


class TestBroadeningRatio:
    def test_identity(self):
        assert broadening_ratio(15.0, 0.0, -25.0, 0.0) == 1.0

    def test_sqrt2_at_dispersion_length(self):
        b2 = beta2_from_D(20.35, 1550.0)
        ld = dispersion_length(15.0, b2)
        assert broadening_ratio(15.0, 0.0, b2, ld) == pytest.approx(math.sqrt(2.0), abs=1e-10)

    def test_250km_ex2000(self):
        b2 = beta2_from_D(20.35, 1550.0)
        ld = dispersion_length(15.0, b2)
        expected = math.sqrt(1.0 + (250.0 / ld) ** 2)
        got = broadening_ratio(15.0, 0.0, b2, 250.0)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(79.97, rel=1e-3)

    def test_chirp_can_compress(self):
        # opposite-sign chirp shortens the pulse before re-broadening
        b2 = beta2_from_D(20.35, 1550.0)
        assert broadening_ratio(15.0, 1.0, b2, 1.5) < 1.0


class TestPulseWidthAt:
    def test_full_compensation_restores_input(self):
        b2_dcf = beta2_from_D(-132.4, 1550.0)
        b2_fib = beta2_from_D(20.35, 1550.0)
        z_star = 40.0 * b2_dcf / -b2_fib
        width = pulse_width_at(15.0, [(b2_dcf, 40.0), (b2_fib, 300.0)], z_star)
        assert width == pytest.approx(15.0, rel=1e-12)

    def test_minimum_sits_at_compensation_point(self):
        b2_dcf = beta2_from_D(-132.4, 1550.0)
        b2_fib = beta2_from_D(20.35, 1550.0)
        segs = [(b2_dcf, 40.0), (b2_fib, 300.0)]
        z_star = 40.0 * 132.4 / 20.35
        assert z_star == pytest.approx(260.3, abs=0.5)
        w_star = pulse_width_at(15.0, segs, z_star)
        for dz in (-10.0, -1.0, 1.0, 10.0):
            assert pulse_width_at(15.0, segs, z_star + dz) > w_star

    def test_single_segment_matches_broadening_ratio(self):
        b2 = beta2_from_D(20.35, 1550.0)
        expected = 15.0 * broadening_ratio(15.0, 0.0, b2, 250.0)
        assert pulse_width_at(15.0, [(b2, 250.0)], 250.0) == pytest.approx(expected, rel=1e-15)
        assert expected == pytest.approx(1199.5, rel=1e-3)

    def test_z_out_of_range(self):
        with pytest.raises(ValueError):
            pulse_width_at(15.0, [(-25.0, 100.0)], 101.0)
        with pytest.raises(ValueError):
            pulse_width_at(15.0, [(-25.0, 100.0)], -1.0)


class TestPulseState:
    def test_derives_output_width(self):
        b2 = beta2_from_D(20.35, 1550.0)
        state = PulseState(input_fwhm_ps=15.0, input_chirp=0.0, accumulated_gvd_ps2=b2 * 250.0)
        assert state.output_fwhm_ps == pytest.approx(
            15.0 * broadening_ratio(15.0, 0.0, b2, 250.0), rel=1e-10
        )

    def test_unchirped_never_narrows(self):
        state = PulseState(input_fwhm_ps=15.0, input_chirp=0.0, accumulated_gvd_ps2=-3.0)
        assert state.output_fwhm_ps >= 15.0


class TestTIsi:
    def test_pulse_fully_inside_gate(self):
        # gate 10x wider than the pulse
        assert t_isi(0.5, 50.0) == pytest.approx(1.0, abs=1e-12)

    def test_gate_equal_to_fwhm(self):
        got = t_isi(0.05, 50.0)
        expected = gate_integral(50.0, -25.0, 25.0)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(math.erf(math.sqrt(LN2)), rel=1e-12)

    def test_vanishing_gate(self):
        assert t_isi(0.0, 50.0) == 0.0


class TestFErrIsi:
    def test_exact_no_overlap(self):
        assert f_err_isi_exact(100.0, 50.0, 1.0) <= 1e-15

    def test_exact_matches_quadrature(self):
        got = f_err_isi_exact(100.0, 50.0, 57.16)
        expected = gate_integral(57.16, 75.0, 125.0)
        assert got == pytest.approx(expected, rel=1e-10)
        assert got == pytest.approx(1.0e-3, rel=2e-3)

    def test_exact_below_approx(self):
        for fwhm in (10.0, 30.0, 57.16, 120.0):
            exact = f_err_isi_exact(100.0, 50.0, fwhm)
            approx = f_err_isi_approx(10.0, 50.0, fwhm)
            assert exact <= approx + 1e-12

    def test_approx_root(self):
        # independent root-find on the C-library formula: the width at
        # which the overlap hits 1e-3 for T = 100 ps, gate = 50 ps
        def overlap(fwhm):
            return 0.5 * math.erfc(math.sqrt(LN2) * 150.0 / fwhm)

        lo, hi = 1.0, 500.0
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            if overlap(mid) < 1e-3:
                lo = mid
            else:
                hi = mid
        assert lo == pytest.approx(57.16, rel=1e-3)
        assert f_err_isi_approx(10.0, 50.0, lo) == pytest.approx(1e-3, rel=1e-9)

    def test_approx_vanishing_width(self):
        assert f_err_isi_approx(10.0, 50.0, 1e-6) == 0.0

    def test_approx_rejects_gate_beyond_two_periods(self):
        with pytest.raises(ValueError):
            f_err_isi_approx(10.0, 200.0, 50.0)

    def test_approx_close_to_exact_when_far_tail_negligible(self):
        # once the second (far-gate) term sits beyond erfc(3), the
        # single-tail form agrees within 5%
        for fwhm in (20.0, 40.0, 57.0):
            arg_far = math.sqrt(LN2) * 250.0 / fwhm
            if arg_far > 3.0:
                exact = f_err_isi_exact(100.0, 50.0, fwhm)
                approx = f_err_isi_approx(10.0, 50.0, fwhm)
                assert approx == pytest.approx(exact, rel=0.05)


class TestMaxRepRate:
    def test_zero_length_unconstrained(self):
        assert max_rep_rate(scenario(length_km=0.0)) == 10.0

    def test_ex2000_250km(self):
        scn = scenario(length_km=250.0)
        got = max_rep_rate(scn)
        assert got == pytest.approx(oracle_max_rep_rate(scn), abs=2e-4)
        assert got == pytest.approx(2.18, rel=0.05)

    def test_full_precompensation_unconstrained(self):
        # DCF sized so the accumulated dispersion vanishes at L
        length = 250.0
        dcf_km = length * 20.35 / 132.4
        scn = scenario(length_km=length, precomp_km=dcf_km)
        assert max_rep_rate(scn) == 10.0


def test_gaussian_intensity_peak_and_halfwidth():
    fwhm = 40.0
    peak = gaussian_intensity(fwhm, 0.0)
    assert gaussian_intensity(fwhm, fwhm / 2.0) == pytest.approx(peak / 2.0, rel=1e-12)
    norm, _ = quad(lambda t: gaussian_intensity(fwhm, t), -math.inf, math.inf, epsabs=1e-13)
    assert norm == pytest.approx(1.0, abs=1e-10)
