import csv
import io
import json

import numpy as np
import pytest

from maxlenqm import cli
from maxlenqm.checks import DEFAULT_TOLERANCES


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_unit_example(capsys):
    code, out, _ = run(["spectrum", "--tau", "1", "--n-max", "3"], capsys)
    assert code == 0
    r = rows(out)
    assert (r[0]["n"], float(r[0]["eta_n"]), float(r[0]["energy"])) == ("0", 0.0, 0.0)
    assert float(r[2]["energy"]) == pytest.approx(1.5, rel=1e-15)
    diffs = np.diff([float(x["eta_n"]) for x in r])
    np.testing.assert_allclose(diffs, np.sqrt(3) / 2, rtol=1e-15)


def test_overlap_output_shape(capsys):
    code, out, _ = run(["overlap", "--tau", "1"], capsys)
    assert code == 0
    header = out.splitlines()[0]
    assert header == "delta,overlap_closed,overlap_quadrature,overlap_quadrature_imag"
    r = rows(out)
    mid = r[len(r) // 2]
    assert float(mid["delta"]) == 0.0
    assert float(mid["overlap_closed"]) == 1.0
    assert float(mid["overlap_quadrature"]) == pytest.approx(1.0, abs=1e-12)


def test_csv_format_details(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["spectrum", "--out", str(out)], capsys)[0] == 0
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    value = raw.decode().splitlines()[2].split(",")[1]
    assert float(value) == float(repr(float(value)))
    assert len(value.replace(".", "").lstrip("0")) >= 16


def test_json_format(capsys):
    code, out, _ = run(["spectrum", "--format", "json", "--n-max", "2"], capsys)
    assert code == 0
    assert [r["n"] for r in json.loads(out)] == [0, 1, 2]


def test_uncertainty_report(capsys):
    code, out, _ = run(["uncertainty", "hermite:k=1,sigma=0.5", "--tau", "0.5"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["satisfied"] is True
    assert payload["extremal"] == {"delta_x_max": 2.0, "delta_p_min": 0.5}


def test_uncertainty_plane_wave_is_structured_divergence(capsys):
    code, out, _ = run(["uncertainty", "plane:eta=1"], capsys)
    assert code == 3
    err = json.loads(out)["error"]
    assert err["type"] == "DivergentMomentError" and err["moment"]


def test_unknown_state_is_config_error(capsys):
    assert run(["uncertainty", "nope"], capsys)[0] == 2


def test_roundtrip_ladder(capsys):
    code, out, _ = run(["roundtrip", "hermite:k=0,sigma=0.5"], capsys)
    assert code == 0
    r = rows(out)
    errs = [float(x["roundtrip_error"]) for x in r]
    assert len(r) == 4 and all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-6
    assert float(r[-1]["parseval_factor"]) == pytest.approx(np.sqrt(3) * 0.1, rel=1e-4)


def test_checks_unattainable_tolerance_fails(capsys):
    code, out, _ = run(["checks", "--tol", "roundtrip=1e-300"], capsys)
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["spectrum", "--tau", "-1"],
    ["spectrum", "--panels", "0"],
    ["spectrum", "--tol", "bogus=1"],
    ["spectrum", "--tol", "roundtrip=-1"],
    ["spectrum", "--tol", "roundtrip"],
])
def test_config_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_missing_config_file_is_io_error(tmp_path, capsys):
    assert run(["spectrum", "--config", str(tmp_path / "missing.json")], capsys)[0] == 4


def test_unwritable_output_is_io_error(tmp_path, capsys):
    assert run(["spectrum", "--out", str(tmp_path / "no" / "such" / "dir.csv")], capsys)[0] == 4


def test_bad_config_json(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert run(["spectrum", "--config", str(p)], capsys)[0] == 2
    p.write_text(json.dumps({"tau": 1.0, "colour": "red"}))
    assert run(["spectrum", "--config", str(p)], capsys)[0] == 2


def test_precedence_flags_over_file(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"tau": 1.0, "mass": 2.0}))
    _, out, _ = run(["spectrum", "--config", str(p), "--mass", "0.5", "--n-max", "2"], capsys)
    r = rows(out)
    assert float(r[2]["energy"]) == pytest.approx(3.0)  # tau=1 from file, mass=0.5 from flag


def test_config_roundtrip_and_determinism(tmp_path, capsys):
    saved = tmp_path / "cfg.json"
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["overlap", "--tau", "0.7", "--panels", "64", "--tol", "roundtrip=1e-5", "--out", str(a)]
    assert run(argv + ["--save-config", str(saved)], capsys)[0] == 0
    cfg = json.loads(saved.read_text())
    assert cfg["tau"] == 0.7 and cfg["panels"] == 64 and cfg["tol"] == {"roundtrip": 1e-5}
    assert set(cfg) == {f for f in cli.RunConfig.__dataclass_fields__}
    assert run(["overlap", "--config", str(saved), "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_runconfig_json_roundtrip():
    cfg = cli.RunConfig(tau=0.3, tol={"parseval": 1e-3}, format="json")
    assert cli.RunConfig.from_mapping(json.loads(cfg.to_json())) == cfg


def test_every_tolerance_name_accepted():
    cli.RunConfig(tol={name: 1.0 for name in DEFAULT_TOLERANCES})
