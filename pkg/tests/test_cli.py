import json

import pytest

from keigraph import cube_kei, textio
from keigraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def good_file(tmp_path):
    path = tmp_path / "cube2.kei"
    k, legend = cube_kei(2)
    textio.write(path, k, legend)
    return str(path)


@pytest.fixture
def bad_file(tmp_path):
    path = tmp_path / "bad.kei"
    path.write_text("kei v1\nn 2\nrow 0: 1 0\nrow 1: 1 0\n")
    return str(path)


def test_validate(capsys, good_file, bad_file):
    assert run(capsys, "validate", "--file", good_file)[0] == 0
    code, out, _ = run(capsys, "validate", "--file", bad_file)
    assert code == 1 and "idempotent: (0,)" in out
    code, out, _ = run(capsys, "validate", "--file", bad_file, "--format", "json")
    assert {"axiom": "idempotent", "witness": [0]} in json.loads(out)["violations"]
    assert run(capsys, "validate", "--family", "dihedral:12")[0] == 0


def test_validate_malformed_is_usage_error(capsys, tmp_path):
    path = tmp_path / "m.kei"
    path.write_text("kei v1\nn 2\nrow 0: 0\n")
    code, _, err = run(capsys, "validate", "--file", str(path))
    assert code == 2 and "line 3" in err
    assert run(capsys, "validate", "--file", str(tmp_path / "missing.kei"))[0] == 2
    assert run(capsys, "validate", "--family", "bogus:3")[0] == 2


def test_analyze_cube(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "cube:3", "--format", "json")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    (cube,) = [r for r in records if r["size"] > 1]
    assert cube["size"] == 8 and cube["diameter"] == 3
    assert [cube["colour_counts"][str(i)] for i in range(3)] == [4, 4, 4]
    assert cube["size_ok"] and cube["colour_ok"]


def test_analyze_trivial_and_dihedral(capsys):
    code, out, _ = run(capsys, "analyze", "-b", "trivial:4", "--format", "json")
    assert code == 0 and [json.loads(line)["size"] for line in out.splitlines()] == [1, 1, 1, 1]
    code, out, _ = run(capsys, "analyze", "-b", "dihedral:4", "--format", "json")
    assert [json.loads(line)["size"] for line in out.splitlines()] == [2, 2]
    code, out, _ = run(capsys, "analyze", "-b", "dihedral:4")
    assert code == 0 and out.count("component") == 2


def test_subkei_flag(capsys):
    code, _, err = run(capsys, "analyze", "-b", "dihedral:3", "--subkei", "0,1")
    assert code == 2 and "closure is 0,1,2" in err
    code, out, _ = run(capsys, "analyze", "-b", "cube:2", "--subkei", "u1,u2", "--format", "json")
    assert code == 0 and len(out.splitlines()) == 3


def test_graph_dot_deterministic(capsys):
    first = run(capsys, "graph", "-b", "conj-sym:4", "--dot")[1]
    second = run(capsys, "graph", "-b", "conj-sym:4")[1]
    assert first == second and first.startswith("graph kei {")
    code, out, _ = run(capsys, "graph", "-b", "dihedral:3", "--format", "json")
    assert json.loads(out)["diameter"] == 1


def test_paths(capsys):
    code, out, _ = run(capsys, "paths", "-b", "cube:2", "00", "11", "--seq", "2")
    assert code == 0 and "00 -u2-> 01 -u1-> 11" in out and "u_s = 01" in out
    code, out, _ = run(capsys, "paths", "-b", "cube:2", "00", "00", "--format", "json")
    assert json.loads(out)["path"] == {"vertices": [2], "colours": []}
    code, out, _ = run(capsys, "paths", "-b", "cube:3", "000", "111", "--hang", "3", "--format", "json")
    assert code == 0 and len(json.loads(out)["hang"]["colours"]) == 3


def test_paths_errors(capsys):
    assert run(capsys, "paths", "-b", "cube:2", "u1", "00")[0] == 2
    assert run(capsys, "paths", "-b", "cube:2", "00", "11", "--hang", "5")[0] == 2
    assert run(capsys, "paths", "-b", "cube:2", "00", "11", "--seq", "2,1")[0] == 2
    assert run(capsys, "paths", "-b", "cube:2", "zz", "11")[0] == 2


def test_verify(capsys, bad_file):
    code, out, _ = run(capsys, "verify", "--n", "3")
    assert code == 0 and json.loads(out)["violations"] == 0
    code, out, _ = run(capsys, "verify", "-b", "cube:5")
    assert code == 0 and json.loads(out)["max_diameter"] == 5
    code, _, err = run(capsys, "verify", "--file", bad_file)
    assert code == 2 and "not a kei" in err
    code, out, _ = run(capsys, "verify", "-b", "cube:3", "--paths", "--sample", "20", "--seed", "4")
    assert code == 0 and "rewrites" in json.loads(out)
    code, out, _ = run(capsys, "verify", "-b", "dihedral:6", "--all-subkei", "--paths")
    assert code == 0 and json.loads(out)["subkei_instances"] > 1
    assert run(capsys, "verify", "-b", "cube:3", "--all-subkei", "--max-subkei", "10")[0] == 2
    assert run(capsys, "verify", "--n", "9")[0] == 2


def test_catalog(capsys, tmp_path):
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    code, out, _ = run(capsys, "catalog", "2", "--out", str(out1))
    assert code == 0 and json.loads(out)["labelled"] == 1
    code, out, _ = run(capsys, "catalog", "3", "--out", str(out1))
    assert json.loads(out)["labelled"] == 5 and json.loads(out)["iso_classes"] == 3
    run(capsys, "catalog", "3", "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["analyze", "-b", "cube:2", "--file", "x"])
    assert info.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "keigraph", "validate", "-b", "trivial:2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "valid kei" in res.stdout
