import json
import subprocess
import sys

import pytest

from orbitfold.cli import RunConfig, main
from orbitfold.group import format_group, pointwise_stabilizer, symmetric_group
from orbitfold.mathieu import load_validated_group


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def stab_file(tmp_path):
    path = tmp_path / "stab.grp"
    path.write_text(format_group(pointwise_stabilizer(load_validated_group("m12"), [0])))
    return path


def test_orbits(capsys, data_dir, stab_file):
    code, out = run(capsys, "orbits", str(data_dir / "m12.grp"))
    assert code == 0 and json.loads(out)["shape"] == "12"
    code, out = run(capsys, "orbits", str(stab_file))
    assert json.loads(out)["shape"] == "1+11"
    code, out = run(capsys, "orbits", str(data_dir / "m11.grp"), "--k", "2")
    obj = json.loads(out)
    assert obj["shape"] == "55" and len(obj["partition"]["blocks"]) == 1


def test_graph_and_dot(capsys, tmp_path, data_dir):
    tetrad = tmp_path / "tetrad.grp"
    from orbitfold.mathieu import build_catalog_subgroup

    tetrad.write_text(format_group(build_catalog_subgroup("m12", "tetrad stabilizer")))
    dot = tmp_path / "g.dot"
    code, out = run(capsys, "graph", str(data_dir / "m12.grp"), str(tetrad), "--dot", str(dot))
    obj = json.loads(out)
    assert code == 0
    assert obj["graph"] == "K8 ⊔ K4"
    assert obj["spectrum"] == [[7, 1], [3, 1], [-1, 10]]
    assert dot.read_text().count("cluster_") == 2


def test_graph_k3_complete(capsys, tmp_path):
    s5, a5 = tmp_path / "s5.grp", tmp_path / "a5.grp"
    from orbitfold.group import alternating_group

    s5.write_text(format_group(symmetric_group(5)))
    a5.write_text(format_group(alternating_group(5)))
    code, out = run(capsys, "graph", str(s5), str(a5), "--k", "3")
    obj = json.loads(out)
    assert obj["complete"] and obj["graph"] == "K10"


def test_input_errors_exit_2(capsys, tmp_path, data_dir):
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 4\ngen (1,5)\n")
    assert main(["orbits", str(bad)]) == 2
    assert main(["graph", str(data_dir / "m12.grp"), str(data_dir / "m24.grp")]) == 2
    assert main(["orbits", str(tmp_path / "missing.grp")]) == 2
    assert main(["catalog", "--ambient", "m99"]) == 2
    assert main(["rigidity", str(data_dir / "m12.grp"), "--point", "13"]) == 2
    assert main([]) == 2


def test_classify(capsys, stab_file):
    code, out = run(capsys, "classify", "--ambient", "m12", str(stab_file))
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "classified" and obj["label"] == "point stabilizer (M11)"


def test_catalog_exit_and_determinism(capsys):
    code, first = run(capsys, "catalog", "--ambient", "m12")
    code2, second = run(capsys, "catalog", "--ambient", "m12", "--workers", "3")
    assert code == code2 == 0
    assert first == second
    assert len(json.loads(first)["rows"]) == 5


def test_recognize12_exit_codes(capsys, tmp_path, data_dir):
    assert run(capsys, "recognize12", str(data_dir / "m12.grp"))[0] == 0
    s12 = tmp_path / "s12.grp"
    s12.write_text(format_group(symmetric_group(12)))
    code, out = run(capsys, "recognize12", str(s12))
    assert code == 1 and json.loads(out)["verdict"] == "not-M12"


def test_rigidity_reports_per_level(capsys, data_dir):
    code, out = run(capsys, "rigidity", str(data_dir / "m12.grp"), "--point", "1")
    obj = json.loads(out)
    assert [l["k"] for l in obj["levels"]] == [2, 3, 4]
    assert obj["levels"][0]["status"] == "pass"
    assert code == (0 if obj["status"] == "pass" else 1)


def test_ds_scan_text(capsys):
    code, out = run(capsys, "ds-scan", "--max-n", "4", "--format", "text")
    assert code == 0 and "0 counterexamples" in out


def test_run_config_rejects_zero_workers():
    with pytest.raises(ValueError):
        RunConfig("ds-scan", workers=0)


def test_console_script_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "orbitfold.cli", "orbits", str(data_dir / "m24.grp")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 244823040
