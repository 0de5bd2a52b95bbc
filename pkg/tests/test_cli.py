"""Command line behavior: outputs, exit codes, determinism."""

import io
import json
import shutil
import subprocess
import sys

import pytest

from toran.cli import main
from toran.mordell_weil import ModuleSpec, PointInEN
from toran.serialize import dumps_canonical, module_spec_to_json_dict


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_module(tmp_path, spec, points, name="module.json"):
    path = tmp_path / name
    path.write_text(dumps_canonical(module_spec_to_json_dict(spec, points)))
    return str(path)


def test_bounds_single(capsys):
    argv = [
        "bounds",
        "--theorem",
        "tadimzero_hY0",
        "--param",
        "N=3",
        "--param",
        "d=1",
        "--param",
        "hV=1",
        "--param",
        "degV=2",
        "--param",
        "ktorV=4",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == "36"
    assert obj["value_exact"] is True
    assert obj["direction"] == "upper"
    code2, out2, _ = run_cli(capsys, argv)
    assert code2 == 0 and out2 == out  # byte-identical rerun


def test_bounds_constants_and_eta(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "bounds",
            "--theorem",
            "tadimzero_hY0",
            "--eta",
            "1",
            "--param",
            "N=3",
            "--param",
            "d=1",
            "--param",
            "hV=1",
            "--param",
            "degV=3",
            "--param",
            "ktorV=2",
            "--constant",
            "c=2",
        ],
    )
    assert code == 0
    assert json.loads(out)["value"] == str(2 * 4**3 * 2**2)


def test_bounds_rejects_bad_range(capsys):
    code, out, err = run_cli(
        capsys,
        ["bounds", "--theorem", "tadimzero_hY0", "--param", "N=3", "--param", "d=2"],
    )
    assert code == 2
    assert not out
    assert "error:" in err


def test_bounds_requires_theorem(capsys):
    code, _, err = run_cli(capsys, ["bounds"])
    assert code == 2 and "theorem" in err


def test_identities_command(capsys):
    code, out, _ = run_cli(capsys, ["identities"])
    assert code == 0
    report = json.loads(out)
    assert len(report) == 13
    assert all(entry["holds"] for entry in report.values())
    code2, out2, _ = run_cli(capsys, ["identities"])
    assert out2 == out
    # alias through the bounds subcommand
    code3, out3, _ = run_cli(capsys, ["bounds", "--identities"])
    assert code3 == 0 and json.loads(out3) == report


def test_sweep(capsys, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    csv_path.write_text(
        "N,d,hV,degV,ktorV,eta\n"
        "3,1,1,2,4,\n"
        "4,1,1,2,3,1/2\n"
    )
    code, out, _ = run_cli(
        capsys, ["bounds", "--theorem", "tadimzero_hY0", "--sweep", str(csv_path)]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,d,hV,degV,ktorV,eta,value,value_float,value_exact"
    assert lines[1].startswith("3,1,1,2,4,")
    assert ",36,36,True" in lines[1]
    assert lines[2].startswith("4,1,1,2,3,1/2,")


def test_classify(capsys, tmp_path):
    spec = ModuleSpec(-3, 1, [[1]])
    x = PointInEN.from_rows(spec, [[1], [2], [3]])
    path = write_module(tmp_path, spec, [x])
    code, out, _ = run_cli(capsys, ["classify", "--module", path, "--dim-v", "1"])
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "anomalous"
    assert obj["theorem_id"] == "tadimzero"
    assert obj["dimB"] == 1
    code2, _, err = run_cli(
        capsys, ["classify", "--module", path, "--dim-v", "1", "--point-index", "3"]
    )
    assert code2 == 2 and "out of range" in err


def test_reduce(capsys, tmp_path):
    spec = ModuleSpec(-4, 1, [[1]])
    x = PointInEN.from_rows(spec, [[(1, 1)], [2]])
    path = write_module(tmp_path, spec, [x])
    code, out, _ = run_cli(capsys, ["reduce", "--module", path])
    assert code == 0
    obj = json.loads(out)
    assert obj["dim"] == 1 and obj["codim"] == 1
    assert obj["matrix"]["rows"] == [["1+1*w", "-1*w"]]
    # explicit unit multipliers give the same coset
    code2, out2, _ = run_cli(
        capsys, ["reduce", "--module", path, "--multipliers", "1,1"]
    )
    assert code2 == 0 and out2 == out


def test_lift(capsys, tmp_path):
    spec = ModuleSpec(-4, 1, [[1]])
    x = PointInEN.from_rows(spec, [[1], [2]])
    path = write_module(tmp_path, spec, [x])
    code, out, _ = run_cli(capsys, ["lift", "--module", path])
    assert code == 0
    obj = json.loads(out)
    assert obj["coset"]["codim"] == 2 and obj["coset"]["dim"] == 1
    assert obj["point"]["rows"] == [["1"], ["2"], ["1"]]


def test_lift_rejects_torsion(capsys, tmp_path):
    spec = ModuleSpec(-4, 1, [[1]], torsion_order=2)
    x = PointInEN.from_rows(spec, [[0], [0]], [1, 1])
    path = write_module(tmp_path, spec, [x])
    code, _, err = run_cli(capsys, ["lift", "--module", path])
    assert code == 2 and "torsion" in err


def test_enumerate_torsion(capsys):
    code, out, _ = run_cli(
        capsys,
        ["enumerate", "--kind", "torsion", "--disc", "-4", "--ambient", "1", "--level", "2"],
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 4
    assert len(obj["items"]) == 4
    assert obj["items"][0] == "level: 2; coords: [0]"
    code2, out2, _ = run_cli(
        capsys,
        [
            "enumerate",
            "--kind",
            "torsion",
            "--disc",
            "-4",
            "--ambient",
            "1",
            "--level",
            "6",
            "--exact-order",
            "--count-only",
        ],
    )
    obj2 = json.loads(out2)
    assert obj2["count"] == 24
    assert "items" not in obj2


def test_enumerate_subgroups(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "enumerate",
            "--kind",
            "subgroups",
            "--disc",
            "-4",
            "--ambient",
            "2",
            "--dim",
            "1",
            "--x-budget",
            "2",
        ],
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 6
    assert all(item["surrogate"] <= 2 for item in obj["items"])


def test_enumerate_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        [
            "enumerate",
            "--kind",
            "subgroups",
            "--disc",
            "-4",
            "--ambient",
            "3",
            "--dim",
            "1",
            "--x-budget",
            "40",
            "--budget",
            "10",
        ],
    )
    assert code == 3
    assert "budget exceeded" in err


def test_enumerate_disc_from_env(capsys, monkeypatch):
    monkeypatch.setenv("TORAN_DISC", "-4")
    code, out, _ = run_cli(
        capsys,
        ["enumerate", "--kind", "torsion", "--ambient", "1", "--level", "2", "--count-only"],
    )
    assert code == 0 and json.loads(out)["disc"] == -4
    monkeypatch.delenv("TORAN_DISC")
    code2, _, err = run_cli(
        capsys,
        ["enumerate", "--kind", "torsion", "--ambient", "1", "--level", "2"],
    )
    assert code2 == 2 and "TORAN_DISC" in err


def test_orthogonal(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("-4 2 1\n1 -1\n")
    code, out, _ = run_cli(capsys, ["orthogonal", "--matrix", str(path), "--text"])
    assert code == 0
    assert out == "-4 2 1\n1 1\n"
    code2, out2, _ = run_cli(capsys, ["orthogonal", "--matrix", str(path)])
    assert json.loads(out2)["complement"]["rows"] == [["1", "1"]]


def test_orthogonal_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("-4 2 1\n1 -1\n"))
    code, out, _ = run_cli(capsys, ["orthogonal", "--matrix", "-", "--text"])
    assert code == 0 and out == "-4 2 1\n1 1\n"


def test_orthogonal_rejects_dependent_rows(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("-4 2 2\n1 1\n1 1\n")
    code, _, err = run_cli(capsys, ["orthogonal", "--matrix", str(path)])
    assert code == 2 and "error:" in err


def test_missing_file(capsys):
    code, _, err = run_cli(capsys, ["orthogonal", "--matrix", "/no/such/file"])
    assert code == 2 and "error:" in err


def test_siegel(capsys, tmp_path):
    path = tmp_path / "sys.txt"
    path.write_text("-4 2 1\n2 3\n")
    code, out, _ = run_cli(capsys, ["siegel", "--matrix", str(path)])
    assert code == 0
    obj = json.loads(out)
    assert obj["solutions"] == [["3", "-2"]]
    assert obj["certificate"]["holds"] is True
    assert obj["certificate"]["achieved_norm"] == 9


def test_complement(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("-4 2 1\n1 0\n")
    code, out, _ = run_cli(capsys, ["complement", "--matrix", str(path)])
    assert code == 0
    obj = json.loads(out)
    assert obj["matrix"]["r"] == 2
    assert obj["certificate"]["holds"] is True


def test_console_script_smoke():
    exe = shutil.which("toran")
    assert exe is not None, "console script should be installed"
    proc = subprocess.run(
        [exe, "identities", "--max-n", "4"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert all(entry["holds"] for entry in json.loads(proc.stdout).values())


def test_module_main_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "toran.cli", "bounds", "--theorem", "kappa", "--param", "g0=1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "32"
