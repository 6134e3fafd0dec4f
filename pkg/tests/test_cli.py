import json
import subprocess
import sys

import pytest

from chamberiso.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main


@pytest.fixture()
def d2n5_file(tmp_path):
    path = tmp_path / "d2n5.json"
    assert main(["gen", "--family", "random", "--d", "2", "--n", "5", "--seed", "1", "-o", str(path)]) == EXIT_OK
    return path


def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_gen_families(tmp_path, capsys):
    for argv, n in [
        (["--family", "random", "--d", "3", "--n", "5"], 5),
        (["--family", "grid", "--counts", "3,3"], 6),
        (["--family", "circle", "--k", "5"], 10),
    ]:
        code, out = _run(["gen", *argv], capsys)
        assert code == EXIT_OK and len(json.loads(out)["hyperplanes"]) == n


def test_gen_is_deterministic(capsys):
    a = _run(["gen", "--family", "random", "--d", "2", "--n", "6", "--seed", "4"], capsys)
    b = _run(["gen", "--family", "random", "--d", "2", "--n", "6", "--seed", "4"], capsys)
    assert a == b


def test_chambers_graph_strata(d2n5_file, capsys):
    code, out = _run(["chambers", str(d2n5_file)], capsys)
    assert code == EXIT_OK and len(json.loads(out)["chambers"]) == 16
    code, out = _run(["graph", str(d2n5_file), "--format", "edges"], capsys)
    assert code == EXIT_OK and len(out.strip().splitlines()) == 25
    code, out = _run(["strata", str(d2n5_file), "--set", "0,1,2"], capsys)
    assert code == EXIT_OK and "support" in json.loads(out)


def test_verify_and_search(d2n5_file, capsys):
    code, out = _run(["verify", str(d2n5_file), "--suite", "conjecture"], capsys)
    assert code == EXIT_OK and len(out.strip().splitlines()) == 9
    code, out = _run(["verify", str(d2n5_file), "--suite", "props"], capsys)
    assert code == EXIT_OK
    code, out = _run(["search", str(d2n5_file), "--size", "4"], capsys)
    rec = json.loads(out)
    assert code == EXIT_OK and rec["kind"] == "minimum" and rec["minimum"] >= 4


def test_verify_bounds_and_appendix(capsys):
    code, out = _run(["verify", "--suite", "bounds", "--d", "3", "--n", "6", "--format", "csv"], capsys)
    assert code == EXIT_OK and out.count("\n") > 1
    code, out = _run(["verify", "--suite", "appendix", "--d-range", "2..3", "--targets", "2", "--a2-n-max", "20"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["violations"] == []


def test_mixing_single(d2n5_file, capsys):
    code, out = _run(["mixing", str(d2n5_file), "--eps", "1/4,0.1"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and set(doc["tMix"]) == {"0.25", "0.1"}


def test_budget_exit_code_and_env_override(d2n5_file, capsys, monkeypatch):
    assert main(["search", str(d2n5_file), "--size", "8", "--budget", "10"]) == EXIT_BUDGET
    monkeypatch.setenv("CHAMBERISO_BUDGET", "10")
    assert main(["search", str(d2n5_file), "--size", "8"]) == EXIT_BUDGET
    assert main(["search", str(d2n5_file), "--size", "8", "--budget", "100000"]) == EXIT_OK
    capsys.readouterr()


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["chambers", str(bad)]) == EXIT_INPUT
    assert main(["chambers", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert main(["mixing", "--batch", "grid", "--m", "3", "--eps", "2"]) == EXIT_INPUT
    capsys.readouterr()


def test_report_is_byte_identical(tmp_path):
    dirs = [tmp_path / "a", tmp_path / "b"]
    for d in dirs:
        assert main(["report", "--out", str(d), "--seed", "3", "--sample", "40"]) == EXIT_OK
    names = sorted(p.name for p in dirs[0].iterdir())
    assert "manifest.json" in names and len(names) == 17
    for name in names:
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_module_entry_point(d2n5_file):
    proc = subprocess.run([sys.executable, "-m", "chamberiso", "graph", str(d2n5_file)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)
