import json

import pytest

from lgbundle.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_hom_equality(capsys):
    code, out, _ = run(capsys, "verify", "theorem-b", "--s", "3", "--a", "1,2")
    d = json.loads(out)
    assert code == 0 and d["pairs_checked"] == 144 and d["mismatches"] == []


def test_quiver_dot(capsys):
    code, out, _ = run(capsys, "quiver", "--s", "3", "--a", "1,2", "--format", "dot")
    assert code == 0 and out.count("->") == 54 and out.count("[label=\"E_") == 12


def test_solve_hirzebruch(capsys):
    code, out, _ = run(capsys, "solve", "--s", "1", "--a", "1", "--u", "0")
    d = json.loads(out)
    assert code == 0 and len(d["points"]) == 4
    reals = [p["z"][0][0] for p in d["points"] if abs(p["z"][0][1]) < 1e-12 and p["z"][0][0] > 0]
    assert any(abs(x - 0.8192) < 1e-4 for x in reals)


def test_outputs_are_deterministic(capsys):
    _, a, _ = run(capsys, "label", "--s", "2", "--a", "0,2", "--threads", "1")
    _, b, _ = run(capsys, "label", "--s", "2", "--a", "0,2", "--threads", "4")
    assert a == b


def test_resume_from_saved_set(tmp_path, capsys):
    saved = tmp_path / "u0.json"
    assert main(["solve", "--s", "1", "--a", "1", "--u", "0", "-o", str(saved)]) == 0
    code, out, _ = run(capsys, "solve", "--s", "1", "--a", "1", "--u", "-5", "--start", str(saved))
    direct = run(capsys, "solve", "--s", "1", "--a", "1", "--u", "-5")[1]
    assert code == 0
    got = [complex(*p["z"][0]) for p in json.loads(out)["points"]]
    want = [complex(*p["z"][0]) for p in json.loads(direct)["points"]]
    assert all(min(abs(g - w) for w in want) < 1e-9 for g in got)


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "solve", "--s", "1", "--a", "2")[0] == 2
    assert run(capsys, "monodromy", "--s", "1", "--a", "1", "--divisor", "v7")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "theorem-b", "--s", "1", "--a", "x")[0] == 2


def test_numerical_error_exit_2(capsys):
    code, _, err = run(capsys, "limits", "--s", "2", "--a", "1", "--direction", "plus")
    assert code == 2 and "PathCollision" in err


def test_mismatch_exit_1(capsys):
    code, out, _ = run(capsys, "monodromy", "--s", "1", "--a", "1", "--divisor", "e0")
    d = json.loads(out)
    assert code == 1 and not d["agree"] and d["agree_grid_carry"]


def test_other_subcommands(capsys, tmp_path):
    code, out, _ = run(capsys, "describe", "--s", "1", "--a", "1")
    assert code == 0 and json.loads(out)["grid"][2]["theta"] == ["1/4", "1/2"]
    code, out, _ = run(capsys, "hom", "--s", "1", "--a", "1")
    assert code == 0 and json.loads(out)["dims"][0] == [1, 2, 3, 5]
    code, out, _ = run(capsys, "limits", "--s", "1", "--a", "0", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "curve", "--s", "1", "--a", "1", "--t-list", "0", "-1")
    assert code == 0 and out.splitlines()[0].startswith("t,index")
    code, out, _ = run(capsys, "verify", "all", "--s", "1", "--a", "0", "--format", "text")
    assert code == 0 and out.count("[PASS]") == 4
    code, out, _ = run(capsys, "quiver", "--s", "1", "--a", "1", "--format", "csv")
    assert code == 2
