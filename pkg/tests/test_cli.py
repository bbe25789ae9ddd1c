import csv
import io
import json

import numpy as np
import pytest

from spinengine.closed_forms import negative_work_threshold_h1
from spinengine.cli import main
from spinengine.sweep import (
    CSV_COLUMNS,
    ConfigError,
    format_value,
    parse_config,
    records_to_csv,
    run_sweep,
)


def _config(**overrides):
    base = {
        "spin_a": "1/2",
        "spin_b": "1/2",
        "j_values": {"start": 0, "stop": 1, "count": 101},
        "b1_values": [3],
        "b2_values": [4],
        "scheme": {"a": "x", "b": "z"},
        "kbt": 1.0,
        "outputs": {"local_works": True, "t2": True, "cop": True},
    }
    base.update(overrides)
    return base


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cycle_uncoupled_json(capsys):
    code, out, _ = _run(capsys, "cycle", "--spin-a", "1/2", "--spin-b", "1/2", "--j", "0",
                        "--b1", "3", "--b2", "4", "--meas-a", "x", "--meas-b", "z")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["eta"] == pytest.approx(0.25, abs=1e-12)
    assert len(rec["transition"]) == 4 and len(rec["post_probs"]) == 4


def test_cycle_zz_has_no_work(capsys):
    code, out, _ = _run(capsys, "cycle", "--meas-a", "z", "--meas-b", "z", "--j", "0.5",
                        "--b1", "3", "--b2", "4", "--format", "csv")
    (row,) = _rows(out)
    assert code == 0 and abs(float(row["wt"])) < 1e-12
    assert float(row["eta"]) == 0.0


def test_cycle_undefined_eta(capsys):
    code, out, _ = _run(capsys, "cycle", "--meas-a", "z", "--meas-b", "z", "--j", "0",
                        "--b1", "3", "--b2", "4", "--format", "csv")
    (row,) = _rows(out)
    assert code == 0 and row["eta"] == "" and "eta_undefined" in row["status"]


def test_cycle_degenerate_fields(capsys):
    _, out, _ = _run(capsys, "cycle", "--b1", "3", "--b2", "3", "--format", "csv")
    (row,) = _rows(out)
    assert float(row["w1"]) == float(row["w2"]) == float(row["wt"]) == 0.0


def test_cycle_bad_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cycle", "--b1", "3", "--b2", "four"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["cycle", "--b1", "3", "--b2", "4", "--meas-a", "w"])
    assert exc.value.code == 2
    assert _run(capsys, "cycle", "--b1", "1", "--b2", "2", "--meas-b", "sic")[0] == 2


def test_cycle_sic_side_a(capsys):
    code, out, _ = _run(capsys, "cycle", "--meas-a", "sic", "--meas-b", "z", "--j", "0.3",
                        "--b1", "1", "--b2", "2", "--format", "csv")
    (row,) = _rows(out)
    assert code == 0 and row["theta_a"] == "" and row["meas_a"] == "sic"


def test_cycle_computation_error_exit_1(capsys):
    code, _, err = _run(capsys, "cycle", "--meas-a", "sic", "--spin-a", "1", "--b1", "1", "--b2", "2")
    assert code == 1 and "error" in err


def test_sweep_half_half_peak(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(_config()))
    out = tmp_path / "o.csv"
    assert _run(capsys, "sweep", str(cfg), "--out", str(out), "--threads", "1")[0] == 0
    rows = _rows(out.read_text())
    assert len(rows) == 101
    assert list(rows[0]) == list(CSV_COLUMNS)
    etas = [float(r["eta"]) for r in rows]
    best = int(np.argmax(etas))
    assert etas[best] > 0.25 and float(rows[best]["j"]) > 0


def test_sweep_half_one_zero_crossing(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(_config(spin_b="1")))
    out = tmp_path / "o.csv"
    assert _run(capsys, "sweep", str(cfg), "--out", str(out), "--threads", "1")[0] == 0
    rows = _rows(out.read_text())
    js = np.array([float(r["j"]) for r in rows])
    etas = np.array([float(r["eta"]) for r in rows])
    k = np.flatnonzero(np.diff(np.sign(etas)) != 0)
    assert len(k) == 1
    assert js[k[0]] < negative_work_threshold_h1(3) <= js[k[0] + 1]
    assert rows[-1]["cop"] != "" and "cop_not_applicable" in rows[0]["status"]


def test_sweep_bytes_independent_of_threads(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(_config(spin_b="3/2", j_values={"start": 0, "stop": 1.2, "count": 40},
                                      b1_values=[0.5, 3], b2_values=[1, 4])))
    outs = []
    for threads in ("1", "3", "3"):
        out = tmp_path / f"o{len(outs)}.csv"
        assert _run(capsys, "sweep", str(cfg), "--out", str(out), "--threads", threads)[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert b"\r" not in outs[0]


@pytest.mark.parametrize("key,value,field", [
    ("j_values", [], "j_values"),
    ("j_values", {"start": 0, "stop": 1}, "j_values"),
    ("b1_values", {"start": 0, "stop": 1, "count": 0}, "b1_values.count"),
    ("b2_values", ["a"], "b2_values"),
    ("kbt", -1, "kbt"),
    ("spin_a", "1/3", "spin_a"),
    ("scheme", {"a": "q", "b": "z"}, "scheme.a"),
    ("scheme", {"a": "x", "b": "sic"}, "scheme.b"),
    ("outputs", {"plots": True}, "outputs.plots"),
    ("colour", 1, "colour"),
])
def test_config_errors_name_field(key, value, field):
    with pytest.raises(ConfigError) as exc:
        parse_config(_config(**{key: value}))
    assert exc.value.field == field


def test_sweep_malformed_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(_config(j_values=[])))
    code, _, err = _run(capsys, "sweep", str(cfg))
    assert code == 2 and "j_values" in err
    cfg.write_text("{not json")
    assert _run(capsys, "sweep", str(cfg))[0] == 2
    assert _run(capsys, "sweep", str(tmp_path / "missing.json"))[0] == 2


def test_angle_scheme_and_order():
    cfg = parse_config(_config(j_values=[0.2, 0.1], b1_values=[1, 2], b2_values=[3],
                               scheme={"a": {"theta": 0.5, "phi": 1.0}, "b": "y"}))
    recs = run_sweep(cfg, threads=1)
    assert [(r["j"], r["b1"]) for r in recs] == [(0.2, 1.0), (0.2, 2.0), (0.1, 1.0), (0.1, 2.0)]
    assert recs[0]["theta_a"] == 0.5 and recs[0]["phi_b"] == pytest.approx(np.pi / 2)


def test_row_errors_go_to_status():
    cfg = parse_config(_config(spin_a="1", scheme={"a": "x", "b": "z"}, j_values=[0.1]))
    cfg = cfg.__class__(**{**cfg.__dict__, "meas_a": "sic"})
    (rec,) = run_sweep(cfg, threads=1)
    assert rec["status"].startswith("error") and rec["w1"] is None
    assert records_to_csv([rec]).count("\n") == 2


def test_float_format_precision():
    for value in (0.25, 1e-5, -3.0, 123456.789, 0.1 + 0.2):
        text = format_value(value)
        digits = text.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
        assert len(digits) >= 12 and float(text) == value
    assert format_value(-0.0) == format_value(0.0)
    assert format_value(None) == ""


def test_validate_default_passes(capsys):
    code, out, _ = _run(capsys, "validate")
    assert code == 0
    assert "PASS tables" in out and "PASS invariants" in out and "(advisory)" in out


def test_validate_tight_tolerance_fails(capsys):
    code, out, _ = _run(capsys, "validate", "--tol", "1e-15")
    assert code == 1 and "FAIL" in out


def test_validate_tables_only(capsys):
    code, out, _ = _run(capsys, "validate", "--groups", "tables")
    assert code == 0 and out.count("\n") == 1
    assert _run(capsys, "validate", "--groups", "nope")[0] == 2
