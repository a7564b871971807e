import json
import math

import numpy as np
import pytest

from coherence_bath.boundary import Geometry, PolarizationWeights
from coherence_bath.cli import main
from coherence_bath.single_qubit import c_re_trajectory

UNBOUNDED = Geometry.unbounded()
PARALLEL = PolarizationWeights.parallel()


def _read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, (float(v) for v in line.split(",")))) for line in lines[1:]]
    return header, rows


def test_single_worked_rows(tmp_path):
    out = tmp_path / "single.csv"
    code = main(
        [
            "single",
            "--theta",
            repr(math.pi / 2),
            "--q-count",
            "3",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    header, rows = _read_csv(out)
    assert header == ["q", "c_l1", "c_re"]
    assert rows[0]["q"] == 0.0 and rows[0]["c_l1"] == 1.0 and rows[0]["c_re"] == 1.0
    assert rows[1]["c_l1"] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert rows[1]["c_re"] == pytest.approx(
        c_re_trajectory(math.pi / 2, 0.5, UNBOUNDED, PARALLEL), abs=1e-15
    )
    assert rows[2]["q"] == 1.0 and rows[2]["c_l1"] == 0.0 and rows[2]["c_re"] == 0.0


def test_single_incoherent_initial_state(tmp_path):
    out = tmp_path / "zero.csv"
    assert main(["single", "--theta", "0", "--q-count", "5", "--out", str(out)]) == 0
    _, rows = _read_csv(out)
    assert all(row["c_l1"] == 0.0 and row["c_re"] == 0.0 for row in rows)


def test_single_near_boundary_columns_nearly_constant(tmp_path):
    out = tmp_path / "frozen.csv"
    code = main(
        [
            "single",
            "--theta",
            repr(math.pi / 2),
            "--geometry",
            "mirror",
            "--u",
            "1e-3",
            "--polarization",
            "parallel",
            "--q-stop",
            "0.99",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, rows = _read_csv(out)
    l1 = [row["c_l1"] for row in rows]
    re = [row["c_re"] for row in rows]
    assert max(l1) - min(l1) < 1e-5
    assert max(re) - min(re) < 1e-4


def test_single_json_format(capsys):
    assert main(["single", "--q-count", "2", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert isinstance(rows, list) and set(rows[0]) == {"q", "c_l1", "c_re"}


def test_two_zero_coherence_family(tmp_path):
    out = tmp_path / "two.csv"
    code = main(
        ["two", "--c1", "0", "--c2", "0", "--c3", "0.5", "--q-count", "4", "--out", str(out)]
    )
    assert code == 0
    header, rows = _read_csv(out)
    assert header == ["q", "c_l1", "c_re", "c_re_closed_form"]
    assert all(row["c_l1"] == 0.0 and row["c_re"] == 0.0 for row in rows)


def test_two_bell_state_first_row(tmp_path):
    out = tmp_path / "bell.csv"
    assert (
        main(["two", "--c1", "1", "--c2", "-1", "--c3", "1", "--q-count", "3", "--out", str(out)])
        == 0
    )
    _, rows = _read_csv(out)
    assert rows[0]["c_l1"] == pytest.approx(1.0, abs=1e-12)
    assert rows[0]["c_re"] == pytest.approx(1.0, abs=1e-12)


def test_two_example_first_row(tmp_path):
    out = tmp_path / "ex.csv"
    assert (
        main(
            ["two", "--c1", "0.8", "--c2", "0.4", "--c3", "-0.2", "--q-count", "3", "--out", str(out)]
        )
        == 0
    )
    _, rows = _read_csv(out)
    assert rows[0]["c_l1"] == pytest.approx(0.8, abs=1e-15)


def test_two_rejects_unphysical_vector(tmp_path, capsys):
    code = main(["two", "--c1", "0.8", "--c2", "0.4", "--c3", "0.2"])
    assert code == 2
    assert "(1 - c3 - (c1 + c2))/4" in capsys.readouterr().err


def test_two_requires_c_vector(capsys):
    assert main(["two"]) == 2
    assert "c1" in capsys.readouterr().err


def test_surface_near_boundary_parallel_constant(tmp_path):
    out = tmp_path / "surface.csv"
    code = main(
        [
            "surface",
            "--measure",
            "l1",
            "--preset",
            "parallel",
            "--u-start",
            "1e-3",
            "--u-stop",
            "1e-2",
            "--u-count",
            "2",
            "--q-stop",
            "0.99",
            "--q-count",
            "21",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    header, rows = _read_csv(out)
    assert header == ["u", "q", "value"]
    first_u = [row["value"] for row in rows if row["u"] == 1e-3]
    assert max(first_u) - min(first_u) < 1e-5


def test_surface_far_mirror_matches_unbounded(tmp_path):
    out = tmp_path / "far.csv"
    code = main(
        [
            "surface",
            "--measure",
            "re",
            "--preset",
            "isotropic",
            "--u-start",
            "1000",
            "--u-stop",
            "2000",
            "--u-count",
            "2",
            "--q-count",
            "21",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, rows = _read_csv(out)
    for row in rows:
        unbounded = c_re_trajectory(math.pi / 2, row["q"], UNBOUNDED, PARALLEL)
        assert abs(row["value"] - unbounded) < 2e-3


def test_surface_perpendicular_decays_faster(tmp_path):
    out = tmp_path / "perp.csv"
    code = main(
        [
            "surface",
            "--measure",
            "l1",
            "--preset",
            "perpendicular",
            "--u-start",
            "0.05",
            "--u-stop",
            "0.1",
            "--u-count",
            "2",
            "--q-start",
            "0.5",
            "--q-stop",
            "0.6",
            "--q-count",
            "2",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, rows = _read_csv(out)
    at_half = [row["value"] for row in rows if row["u"] == 0.05 and row["q"] == 0.5]
    assert at_half[0] < math.sqrt(0.5)


def test_freeze_single_not_frozen(capsys):
    code = main(["freeze", "--mode", "single", "--theta", repr(math.pi / 4)])
    assert code == 0
    out = capsys.readouterr().out
    assert "not frozen" in out
    payload = json.loads(out[out.index("{") :])
    assert payload["l1_frozen"] is False
    assert payload["sup_dq_c_l1"] > 0.0


def test_freeze_single_boundary(tmp_path, capsys):
    twin = tmp_path / "freeze.json"
    code = main(
        [
            "freeze",
            "--mode",
            "single",
            "--geometry",
            "mirror",
            "--u",
            "1e-7",
            "--polarization",
            "parallel",
            "--out",
            str(twin),
        ]
    )
    assert code == 0
    assert "FROZEN (boundary-induced)" in capsys.readouterr().out
    payload = json.loads(twin.read_text())
    assert payload["l1_frozen"] and payload["re_frozen"]
    assert payload["numeric_consistent"]


def test_freeze_two_trivial(capsys):
    code = main(["freeze", "--mode", "two", "--c1", "0", "--c2", "0", "--c3", "0.7"])
    assert code == 0
    out = capsys.readouterr().out
    assert "FROZEN (trivial)" in out


def test_freeze_two_requires_vector(capsys):
    assert main(["freeze", "--mode", "two"]) == 2
    assert "requires c1" in capsys.readouterr().err


def test_validate_default_passes(capsys):
    code = main(["validate", "--cases", "10"])
    assert code == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out
    assert "relative-entropy closed-form gap" in out


def test_validate_deterministic_output_files(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["validate", "--cases", "8", "--seed", "5", "--out", str(a)]) == 0
    assert main(["validate", "--cases", "8", "--seed", "5", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_validate_coarse_step_fails_tolerance(capsys):
    # at the maximum allowed step the fastest sampled phase rotations leave
    # a truncation error above the 1e-8 gate
    code = main(["validate", "--seed", "9", "--cases", "40", "--step", "0.01"])
    assert code == 4
    assert "result: FAIL" in capsys.readouterr().out


def test_sweep_outputs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["single", "--theta", "1.1", "--geometry", "mirror", "--u", "0.3"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_round_trip(tmp_path):
    direct = tmp_path / "direct.csv"
    dumped = tmp_path / "resolved.ini"
    args = [
        "single",
        "--theta",
        "0.9",
        "--geometry",
        "mirror",
        "--u",
        "0.25",
        "--polarization",
        "isotropic",
        "--q-count",
        "11",
    ]
    assert main(args + ["--out", str(direct), "--dump-config", str(dumped)]) == 0
    # rerun purely from the dumped config; only the output path is overridden
    replay = tmp_path / "replay.csv"
    assert main(["single", "--config", str(dumped), "--out", str(replay)]) == 0
    assert direct.read_bytes() == replay.read_bytes()


def test_config_flags_win(tmp_path):
    config = tmp_path / "conf.ini"
    config.write_text("[single]\ntheta = 0.3\nq_count = 4\n")
    out = tmp_path / "out.csv"
    assert main(["single", "--config", str(config), "--theta", "0.0", "--out", str(out)]) == 0
    _, rows = _read_csv(out)
    assert len(rows) == 4  # q_count from config
    assert all(row["c_l1"] == 0.0 for row in rows)  # theta from flag


def test_config_unknown_key_rejected(tmp_path, capsys):
    config = tmp_path / "conf.ini"
    config.write_text("[single]\nthetaa = 0.3\n")
    assert main(["single", "--config", str(config)]) == 2
    assert "unknown config keys" in capsys.readouterr().err


def test_missing_config_is_io_error(capsys):
    assert main(["single", "--config", "/nonexistent/path.ini"]) == 3


def test_unwritable_output_is_io_error(tmp_path):
    assert main(["single", "--out", str(tmp_path / "no" / "dir" / "x.csv")]) == 3


def test_nan_rejected_at_parse_time(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["single", "--theta", "nan"])
    assert excinfo.value.code == 2


def test_invalid_grid_rejected(capsys):
    assert main(["single", "--q-start", "0.9", "--q-stop", "0.1"]) == 2
    assert main(["single", "--q-count", "1"]) == 2


def test_mirror_requires_u(capsys):
    assert main(["single", "--geometry", "mirror"]) == 2
    assert "requires a distance u" in capsys.readouterr().err


def test_no_command_prints_help(capsys):
    assert main([]) == 2
