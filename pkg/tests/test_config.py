import textwrap

import pytest

from qkd_linksim import load_config
from qkd_linksim.config import (
    ConfigParseError,
    ConfigValueError,
    SWEEP_COLUMNS,
    UnknownKeyError,
)


def write(tmp_path, body):
    path = tmp_path / "scenario.toml"
    path.write_text(textwrap.dedent(body), encoding="utf-8")
    return path


MINIMAL = """
    [fiber]
    preset = "EX2000"
    length_km = 100.0
"""


def test_minimal_config_defaults(tmp_path):
    request = load_config(write(tmp_path, MINIMAL))
    scn = request.scenario
    assert scn.fiber.attenuation_db_per_km == 0.16
    assert scn.fiber.dispersion_ps_nm_km == 20.35
    assert scn.length_km == 100.0
    assert scn.classical is None
    assert scn.precomp is None
    assert request.lengths == ()
    assert request.columns == SWEEP_COLUMNS
    assert request.fmt == "csv"


def test_empty_detector_section_gives_snspd_defaults(tmp_path):
    request = load_config(write(tmp_path, MINIMAL + "\n[detector]\n"))
    det = request.scenario.detector
    assert det.efficiency == 0.014
    assert det.dead_time_us == 0.1
    assert det.afterpulse_ratio == 0.0
    assert det.detector_count == 2
    assert det.dark_count_rate_per_ns == 50e-9
    assert det.internal_loss_db == 2.65


def test_fiber_preset_lookup(tmp_path):
    for name, expected in (("EX2000", (0.16, 20.35)), ("LEAF", (0.185, 4.25)),
                           ("ldf", (0.185, 0.1)), ("<4>", (0.21, 17.0))):
        path = write(tmp_path, f'[fiber]\npreset = "{name}"\nlength_km = 1.0\n')
        fiber = load_config(path).scenario.fiber
        assert (fiber.attenuation_db_per_km, fiber.dispersion_ps_nm_km) == expected


def test_explicit_fiber_values(tmp_path):
    path = write(
        tmp_path,
        """
        [fiber]
        label = "lab-spool"
        attenuation_db_per_km = 0.19
        dispersion_ps_nm_km = 16.5
        length_km = 42.0
        """,
    )
    fiber = load_config(path).scenario.fiber
    assert fiber.label == "lab-spool"
    assert fiber.attenuation_db_per_km == 0.19


def test_misspelled_key_is_named_in_error(tmp_path):
    path = write(
        tmp_path,
        """
        [fiber]
        preset = "EX2000"
        attenuaton = 0.2
        """,
    )
    with pytest.raises(UnknownKeyError, match="attenuaton"):
        load_config(path)


def test_unknown_section_rejected(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[fibre]\n")
    with pytest.raises(UnknownKeyError, match="fibre"):
        load_config(path)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_config("/nonexistent/path.toml")


def test_parse_error_carries_location(tmp_path):
    path = write(tmp_path, "[fiber\npreset = EX2000")
    with pytest.raises(ConfigParseError, match=r"line"):
        load_config(path)


def test_out_of_range_value(tmp_path):
    path = write(
        tmp_path,
        """
        [fiber]
        preset = "EX2000"

        [detector]
        efficiency = 1.5
        """,
    )
    with pytest.raises(ConfigValueError, match="efficiency"):
        load_config(path)


def test_wrong_type_value(tmp_path):
    path = write(tmp_path, '[fiber]\npreset = "EX2000"\nlength_km = "far"\n')
    with pytest.raises(ConfigValueError, match="length_km"):
        load_config(path)


def test_preset_and_explicit_values_conflict(tmp_path):
    path = write(
        tmp_path,
        """
        [fiber]
        preset = "EX2000"
        attenuation_db_per_km = 0.3
        dispersion_ps_nm_km = 10.0
        """,
    )
    with pytest.raises(ConfigValueError, match="preset"):
        load_config(path)


def test_precomp_defaults_to_dcf(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[precomp]\nlength_km = 40.0\n")
    precomp = load_config(path).scenario.precomp
    assert precomp is not None
    assert precomp.dcf_fiber.dispersion_ps_nm_km == -132.4
    assert precomp.dcf_length_km == 40.0


def test_classical_section_enables_channels(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[classical]\nforward_count = 3\n")
    classical = load_config(path).scenario.classical
    assert classical is not None
    assert classical.forward_count == 3
    assert classical.backward_count == 2
    assert classical.receiver_sensitivity_dbm == -50.0


def test_sweep_range_expansion(tmp_path):
    path = write(
        tmp_path,
        MINIMAL
        + """
        [sweep]
        start_km = 10
        stop_km = 50
        step_km = 10
        """,
    )
    assert load_config(path).lengths == (10.0, 20.0, 30.0, 40.0, 50.0)


def test_sweep_explicit_lengths_and_columns(tmp_path):
    path = write(
        tmp_path,
        MINIMAL
        + """
        [sweep]
        lengths = [5.0, 1.0, 3.0]
        columns = ["L_km", "r_sec_bps"]
        format = "json"
        """,
    )
    request = load_config(path)
    assert request.lengths == (5.0, 1.0, 3.0)
    assert request.columns == ("L_km", "r_sec_bps")
    assert request.fmt == "json"


def test_sweep_rejects_bad_step(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[sweep]\nstart_km = 10\nstop_km = 5\nstep_km = 1\n")
    with pytest.raises(ConfigValueError, match="start_km"):
        load_config(path)
    path = write(tmp_path, MINIMAL + "\n[sweep]\nstart_km = 1\nstop_km = 5\nstep_km = 0\n")
    with pytest.raises(ConfigValueError, match="step_km"):
        load_config(path)


def test_sweep_rejects_unknown_column(tmp_path):
    path = write(tmp_path, MINIMAL + '\n[sweep]\nlengths = [1]\ncolumns = ["L_km", "skr"]\n')
    with pytest.raises(ConfigValueError, match="skr"):
        load_config(path)


def test_protocol_overrides(tmp_path):
    path = write(
        tmp_path,
        MINIMAL
        + """
        [protocol]
        visibility = 0.99
        rep_rate_cap_ghz = 5.0
        """,
    )
    proto = load_config(path).scenario.protocol
    assert proto.visibility == 0.99
    assert proto.rep_rate_cap_ghz == 5.0
    assert proto.qber_threshold == 0.09
