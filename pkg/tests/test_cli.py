import csv
import json
import math
import os

import numpy as np
import pytest

from blochvar.cli import run


def _run(args):
    return run(args)


def test_basis_qubit_json(tmp_path):
    out = tmp_path / "b2.json"
    code, report = _run(["basis", "--dim", "2", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == 1
    assert len(payload["generators"]) == 3
    assert payload["d"] == []
    assert payload["f"] == [[1, 2, 3, 1.0]]


def test_basis_qutrit_lists_tensors(capsys):
    code, report = _run(["basis", "--dim", "3"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out.split("\nbasis dim=")[0])
    assert payload["n_generators"] == 8
    assert len(payload["f"]) > 0 and len(payload["d"]) > 0
    assert payload["algebra_residual"] < 1e-11


def test_basis_alias_and_csv(tmp_path):
    out = tmp_path / "b3.csv"
    code, _ = _run(["structure-consts", "--dim", "3", "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "kind,j,k,l,value"
    assert any(line.startswith("f,1,2,3,") for line in lines)
    assert any(line.startswith("d,1,1,8,") for line in lines)


def test_basis_dim_out_of_range_exits_2():
    with pytest.raises(SystemExit) as err:
        _run(["basis", "--dim", "1"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        _run(["basis", "--dim", "9"])
    assert err.value.code == 2


@pytest.mark.parametrize(
    "relation,extra",
    [
        ("triangle", []),
        ("theorem1", []),
        ("mixed-limit", []),
        ("pure-limit", []),
        ("unit-vector", []),
        ("three-obs-equality", ["--theta-ab", "0.7853981633974483"]),
        ("appendix-b", []),
        ("appendix-c", ["--dim", "3"]),
        ("robertson", []),
        ("state-dependent", []),
    ],
)
def test_verify_relations_hold(relation, extra):
    code, report = _run(["verify", relation, "--samples", "60", "--seed", "11"] + extra)
    assert code == 0
    summary = report["results"][0]
    assert summary["holds"]
    assert summary["checks"] >= 60
    assert report["config"]["seed"] == 11


def test_verify_appendix_b_residuals():
    code, report = _run(["verify", "appendix-b", "--samples", "1000", "--seed", "2"])
    assert code == 0
    assert report["results"][0]["max_abs_margin"] <= 1e-11


def test_verify_relation_dim_mismatch_exits_2():
    with pytest.raises(SystemExit) as err:
        _run(["verify", "theorem1", "--dim", "3", "--samples", "10"])
    assert err.value.code == 2


def test_verify_unknown_relation_exits_2():
    with pytest.raises(SystemExit) as err:
        _run(["verify", "nonsense"])
    assert err.value.code == 2


def test_verify_report_is_reproducible(tmp_path):
    args = ["verify", "theorem1", "--samples", "400", "--seed", "123"]
    _, first = _run(args)
    _, second = _run(args)
    assert first["worst_margin"] == second["worst_margin"]
    assert first["results"][0]["max_abs_margin"] == second["results"][0]["max_abs_margin"]


def test_verify_threads_do_not_change_results():
    args = ["verify", "pure-limit", "--samples", "300", "--seed", "5"]
    _, base = _run(args)
    os.environ["UR_THREADS"] = "4"
    try:
        _, threaded = _run(args)
    finally:
        del os.environ["UR_THREADS"]
    assert base["worst_margin"] == threaded["worst_margin"]
    assert threaded["config"]["threads"] == 4


def test_region_pair_slice_and_artifacts(tmp_path):
    csv_path = tmp_path / "scan.csv"
    json_path = tmp_path / "scan.json"
    code, report = _run(
        [
            "region",
            "pair",
            "--theta-ab",
            "0.5235987755982988",
            "--samples",
            "30000",
            "--seed",
            "1",
            "--slice-da2",
            "0.25",
            "--csv",
            str(csv_path),
            "--json",
            str(json_path),
        ]
    )
    assert code == 0
    sl = report["results"][0]["slice"]
    assert sl["db_min"] <= 0.1
    assert abs(sl["db_max"] - math.sqrt(3) / 2) <= 0.02

    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["sample_index", "purity", "dA2", "dB2", "margin"]
    assert len(rows) == 30001
    raw = csv_path.read_bytes()
    assert b"\r\n" not in raw  # LF endings

    payload = json.loads(json_path.read_text())
    assert payload["schema"] == 1
    rle = payload["occupancy_rle"]
    assert sum(rle["runs"]) == payload["n_cells"] ** 2


def test_region_rle_round_trip(tmp_path):
    json_path = tmp_path / "scan.json"
    code, _ = _run(
        ["region", "pair", "--theta-ab", "1.0", "--samples", "2000", "--seed", "3",
         "--json", str(json_path)]
    )
    assert code == 0
    payload = json.loads(json_path.read_text())
    rle = payload["occupancy_rle"]
    flat = []
    value = rle["first"]
    for run in rle["runs"]:
        flat.extend([value] * run)
        value = 1 - value
    occupancy = np.array(flat, dtype=bool).reshape(payload["n_cells"], payload["n_cells"])
    assert occupancy.sum() > 0


def test_region_degenerate_line_diagnostic():
    code, report = _run(["region", "pair", "--theta-ab", "0", "--samples", "2000", "--seed", "4"])
    assert code == 0
    assert report["results"][0]["degenerate_line"] <= 1e-9


def test_region_triple_residuals():
    code, report = _run(
        ["region", "triple", "--theta-ab", "0.7853981633974483", "--samples", "3000", "--seed", "5"]
    )
    assert code == 0
    assert report["results"][0]["max_abs_margin"] <= 1e-9


def test_region_usage_errors():
    with pytest.raises(SystemExit) as err:
        _run(["region", "pair", "--theta-ab", "1.0", "--grid", "0.5"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        _run(["region", "pair", "--theta-ab", "7.0"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        _run(["region", "triple", "--theta-ab", "1.0", "--ensemble", "mixed"])
    assert err.value.code == 2


def test_region_reports_reproduce():
    args = ["region", "pair", "--theta-ab", "1.0", "--samples", "3000", "--seed", "9"]
    _, first = _run(args)
    _, second = _run(args)
    assert first["worst_margin"] == second["worst_margin"]
    assert first["results"][0]["occupied_cells"] == second["results"][0]["occupied_cells"]


def test_compare_triviality_contrast():
    code, report = _run(
        ["compare", "--state", "pure:(1,0,0)", "--A", "sigma1", "--B", "sigma2"]
    )
    assert code == 0
    rows = {row["bound"]: row for row in report["results"]}
    assert rows["robertson"]["rhs"] == 0.0
    assert rows["robertson"]["lhs"] == 0.0
    span = rows["axis_angle_span"]
    assert span["span_db_any_state"] == [0.0, 1.0]
    assert span["span_db_given_da2"] == [1.0, 1.0]
    assert rows["state_dependent_plus"]["applicable"]
    assert rows["state_dependent_plus"]["holds"]


def test_compare_eq17_span_with_da2_flag():
    theta = math.pi / 6
    b_spec = f"n:({math.cos(theta)},{math.sin(theta)},0)"
    code, report = _run(
        ["compare", "--state", "pure:(0,0,1)", "--A", "sigma1", "--B", b_spec,
         "--da2", "0.25"]
    )
    assert code == 0
    span = next(r for r in report["results"] if r["bound"] == "axis_angle_span")
    lo, hi = span["span_db_given_da2"]
    assert lo == pytest.approx(0.0, abs=1e-9)
    assert hi == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert span["da2_source"] == "flag"


def test_compare_mixed_state_marks_not_applicable():
    code, report = _run(["compare", "--state", "mixed", "--A", "sigma1", "--B", "sigma2"])
    assert code == 0
    rows = {row["bound"]: row for row in report["results"]}
    assert not rows["state_dependent_plus"]["applicable"]
    assert not rows["state_dependent_minus"]["applicable"]
    assert rows["robertson"]["applicable"]


def test_compare_json_matrix_input(tmp_path):
    path = tmp_path / "obs.json"
    path.write_text(json.dumps({"dim": 2, "re": [0.0, 1.0, 1.0, 0.0], "im": [0.0, 0.0, 0.0, 0.0]}))
    code, report = _run(
        ["compare", "--state-seed", "3", "--A", f"@{path}", "--B", "sigma2"]
    )
    assert code == 0
    assert all(row.get("holds", True) for row in report["results"] if row["applicable"])


def test_compare_usage_errors():
    with pytest.raises(SystemExit) as err:
        _run(["compare", "--A", "sigma1", "--B", "sigma2"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        _run(["compare", "--state", "mixed", "--state-seed", "1", "--A", "sigma1", "--B", "sigma2"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        _run(["compare", "--state", "mixed", "--A", "sigma9", "--B", "sigma2"])
    assert err.value.code == 2


def test_reports_embed_seed_and_schema():
    _, report = _run(["verify", "robertson", "--samples", "50", "--seed", "77"])
    assert report["schema"] == 1
    assert report["config"]["seed"] == 77
    assert "wall_time_s" in report
