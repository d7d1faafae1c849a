import json
from pathlib import Path

import pytest

from treecover.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("argv, golden", [
    (["gen", "--family", "diamond"], "diamond.txt"),
    (["gen", "--family", "necklace", "--n", "3"], "necklace3.txt"),
    (["decompose", GOLDEN / "diamond.txt"], "decompose_diamond.json"),
    (["compute", "--json", GOLDEN / "necklace3.txt"], "compute_necklace3.json"),
    (["cover", GOLDEN / "diamond.txt"], "cover_diamond.txt"),
    (["verify", "--necklace", "3"], "verify_necklace3.json"),
])
def test_golden_outputs(capsys, argv, golden):
    code, out = run(capsys, *argv)
    assert code == 0
    assert out.out == (GOLDEN / golden).read_text()


def test_compute_prints_tau(capsys):
    code, out = run(capsys, "compute", GOLDEN / "necklace3.txt")
    assert (code, out.out.strip()) == (0, "tau=3")


def test_verify_reports_literal_column(capsys):
    run(capsys, "verify", "--necklace", "3")
    rows = json.loads((GOLDEN / "verify_necklace3.json").read_text())["rows"]
    assert [(r["algo_tau"], r["step4_literal_tau"], r["oracle_tau"]) for r in rows][-1] == (3, 4, 3)


def test_witness_and_dot(capsys):
    code, out = run(capsys, "compute", "--witness", "--dot", GOLDEN / "diamond.txt")
    assert code == 0
    assert "part 1:" in out.out and "graph" in out.out


def test_empty_verify(capsys):
    code, out = run(capsys, "verify")
    assert code == 0 and json.loads(out.out)["rows"] == []


def test_rejected_class_exits_2(tmp_path, capsys):
    f = tmp_path / "k4.txt"
    f.write_text("0 1\n1 2\n2 3\n3 0\n0 2\n1 3\n")
    code, out = run(capsys, "compute", f)
    assert code == 2 and "not outerplanar" in out.err


@pytest.mark.parametrize("text", ["0 0\n", "0 1\n1 x\n", "0\n"])
def test_bad_input_exits_1(tmp_path, capsys, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    code, _ = run(capsys, "compute", f)
    assert code == 1


def test_disconnected_input_is_rejected(tmp_path, capsys):
    f = tmp_path / "two.txt"
    f.write_text("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n")
    code, out = run(capsys, "compute", f)
    assert code == 2 and "connected" in out.err


def test_missing_file_exits_1(tmp_path, capsys):
    code, _ = run(capsys, "compute", tmp_path / "nope.txt")
    assert code == 1
