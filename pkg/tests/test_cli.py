from __future__ import annotations

import pytest

from conftest import SAMPLES
from deltakoszul.cli.commands import Command, UsageError, run
from deltakoszul.cli.parser import parse
from deltakoszul.common.errors import ParseError
from deltakoszul.main import main

GRADED = str(SAMPLES / "kx_graded.dk")
FINDIM = str(SAMPLES / "kx2_findim.dk")

HEADER = "field Q\nalgebra findim N=3\nvertex v\narrow x: v -> v\n"


def _error(text: str) -> str:
    with pytest.raises(ParseError) as exc:
        parse(text)
    return str(exc.value)


def test_parse_errors_are_located():
    assert _error("vertex v\n") == "1:1: no algebra block"
    assert _error("# nothing here\n") == "1:1: no algebra block"
    assert _error("algebra findim N=3\nvertex v\narrow x: v -> w\n") == "3:15: undeclared vertex 'w'"
    assert _error("algebra graded N=3\n").startswith("1:")
    assert "field must come before the algebra" in _error("algebra findim N=3\nfield F3\n")


def test_parse_rejects_inexact_and_malformed_matrices():
    assert "not an exact integer or fraction" in _error(HEADER + "module M\n  space v dim 1\n  act x = [[0.5]]\n")
    assert "different lengths" in _error(HEADER + "module M\n  space v dim 2\n  act x = [[0,1],[0]]\n")


def test_parse_rejects_non_representations():
    # x acting invertibly violates x² = 0
    text = HEADER + "relation x.x\nmodule M\n  space v dim 1\n  act x = [[1]]\n"
    assert "is not a representation" in _error(text)


def test_parse_rejects_non_exact_sequences():
    text = (SAMPLES / "kx2_findim.dk").read_text(encoding="utf-8").replace("[[0,1]]", "[[1,0]]")
    with pytest.raises(ParseError):
        parse(text)


def test_sample_workspace_contents():
    ws = parse((SAMPLES / "kx_graded.dk").read_text(encoding="utf-8"), source=GRADED)
    assert list(ws.modules) == ["M", "K", "N"]
    assert ws.ses_parts["xi"] == ("K", "i", "M", "p", "N")
    assert ws.algebra.graded and ws.algebra.bound == 6


@pytest.mark.parametrize("sample", ["kx_graded.dk", "kx2_findim.dk", "kx3_findim.dk", "exterior.dk"])
def test_dump_parses_back_to_the_same_workspace(sample):
    ws = parse((SAMPLES / sample).read_text(encoding="utf-8"))
    _, report = run(ws, Command("dump"))
    again = parse(report.raw)
    assert again.same_as(ws)
    assert run(again, Command("dump"))[1].raw == report.raw


def test_unknown_targets_are_usage_errors():
    ws = parse((SAMPLES / "kx3_findim.dk").read_text(encoding="utf-8"))
    with pytest.raises(UsageError):
        run(ws, Command("resolve", target="Q"))
    with pytest.raises(UsageError):
        run(ws, Command("mhl", target="xi"))
    with pytest.raises(UsageError):
        run(None, Command("resolve", target="S"))


def test_resolve_exit_code_and_machine_output(capsys):
    assert main(["--machine", "resolve", GRADED, "N", "--n-max", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["betti 0 v:0x1", "betti 1 v:1x1", "pd Finite(1)", "check certified_up_to", "verdict certified_up_to"]


def test_human_output_ends_with_the_verdict(capsys):
    assert main(["resolve", FINDIM, "N", "--n-max", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "minimal resolution of N"
    assert out[-1] == "verdict: certified"


def test_mhl_failure_prints_a_witness(capsys):
    assert main(["mhl", GRADED, "xi", "--n-max", "3"]) == 1
    captured = capsys.readouterr()
    assert "radical condition FAILS at (degree 1, v): dim JK=0 < dim K∩JM=1" in captured.out
    assert captured.err.startswith("witness: level=0")

    assert main(["--machine", "mhl", GRADED, "xi", "--n-max", "3"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "radical fails degree=1 vertex=0 dim_jk=0 dim_k_jm=1"
    assert "cond agree true" in lines
    assert lines[-1] == "verdict fails"


def test_koszul_command(capsys):
    assert main(["--machine", "koszul", GRADED, "N", "--delta", "koszul", "--n-max", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "verdict certified"
    assert main(["--machine", "koszul", GRADED, "K", "--n-max", "3"]) == 1
    kx3 = str(SAMPLES / "kx3_findim.dk")
    assert main(["--machine", "koszul", kx3, "S", "--delta", "dkoszul:3", "--n-max", "4"]) == 0
    assert main(["--machine", "koszul", kx3, "S", "--delta", "infer", "--n-max", "4"]) == 0


def test_algebra_command(capsys):
    exterior = str(SAMPLES / "exterior.dk")
    assert main(["--machine", "algebra", exterior, "--delta", "koszul", "--n-max", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:3] == ["dim 0 1", "dim 1 2", "dim 2 1"]
    assert "nilpotency 3" in out


def test_horseshoe_command(capsys):
    assert main(["--machine", "horseshoe", GRADED, "xi", "--classic", "--n-max", "1"]) == 1
    assert capsys.readouterr().out.splitlines()[0].startswith("mhl 0 fail degree=1")


def test_input_errors_exit_with_3(capsys, tmp_path):
    assert main(["resolve", str(tmp_path / "missing.dk"), "N"]) == 3
    assert capsys.readouterr().err.startswith("error: ")
    bad = tmp_path / "bad.dk"
    bad.write_text("algebra findim N=3\nvertex v\narrow x: v -> w\n", encoding="utf-8")
    assert main(["resolve", str(bad), "N"]) == 3
    assert f"error: {bad}:3:15: undeclared vertex 'w'" in capsys.readouterr().err
    assert main(["koszul", FINDIM, "N", "--delta", "dkoszul:1"]) == 3


def test_output_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        main(["mhl", FINDIM, "xi", "--n-max", "2"])
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]


def test_audit_command(capsys):
    code = main(["--machine", "audit", "lemma33", "--trials", "2", "--n-max", "2"])
    assert code in (0, 2)
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("audit lemma33 trials=2 ")
    assert "failures=0" in out[0]


def test_audit_command_takes_field_and_profile(capsys):
    argv = ["--machine", "audit", "thmA", "--trials", "2", "--n-max", "2", "--field", "F7", "--delta", "dkoszul:2"]
    assert main(argv) in (0, 2)
    assert "failures=0" in capsys.readouterr().out
    assert main(["audit", "thmA", "--trials", "1", "--field", "F4"]) == 3
    assert main(["audit", "thmA", "--trials", "1", "--field", "F2147483659"]) == 3
