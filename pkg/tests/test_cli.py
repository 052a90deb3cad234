import pytest

from quadmod import cli
from quadmod.cli import SessionError, main, run_session
from quadmod.verify import SequenceReport

Z2_SESSION = """\
ring R = Z
module M over R gens 1 rels [[(2)]]
compute p2 M
"""


def run_file(tmp_path, text, *args):
    path = tmp_path / "session.txt"
    path.write_text(text)
    return main(["run", str(path), *args])


def test_p2_of_z_mod_2_has_order_four():
    rep = run_session(Z2_SESSION)
    assert "RESULT p2(M) invariants: [4]" in rep.lines
    assert rep.lines[0] == "DEF R ring Z rank 1"


def test_gmsequ_passes_on_z_mod_2():
    rep = run_session(Z2_SESSION + "verify gmsequ M\n")
    checks = [line for line in rep.lines if line.startswith("CHECK")]
    assert checks and all(line.endswith("PASS") for line in checks)
    assert checks[-1] == "CHECK gmsequ@all PASS"
    assert rep.failed == 0


def test_empty_session_gives_empty_report():
    assert run_session("").text == ""
    assert run_session("# only a comment\n\n").text == ""


def test_free_module_invariants_line():
    rep = run_session("ring R = Z\nmodule F over R gens 2 rels []\n")
    assert rep.lines[-1].endswith("invariants: [0, 0]")


def test_passi_line_format():
    rep = run_session(Z2_SESSION + "verify passi_Z M\n")
    assert rep.lines[-1] == "CHECK passi_Z@all PASS"


def test_reports_are_deterministic_per_seed():
    text = "seed 3\nring R = Zmod 4\nverify relrho R\nring Z = Z\nmap f over Z arity 1 1 = [x^3]\nanalyze f\n"
    assert run_session(text).text == run_session(text).text
    assert run_session(text, seed=5).text == run_session(text, seed=5).text


def test_maps_are_analyzed_decomposed_and_factored():
    text = """\
ring Z = Z
ring F = Zmod 3
map c over Z arity 1 1 = [1/2*x^2 - 1/2*x]
map q over F arity 1 1 = [x^2 + x]
map cube over Z arity 1 1 = [x^3]
analyze c
analyze cube
decompose q r=(2)
decompose c
factor c
print report
"""
    lines = run_session(text).lines
    assert "RESULT quadratic(c) quadratic (symbolic)" in lines
    assert any(l.startswith("RESULT quadratic(cube) not quadratic: defadd1 fails") for l in lines)
    assert "RESULT decompose(q) r=[2] linear=[x1] homogeneous=[x1^2]" in lines
    assert any(l.startswith("RESULT decompose(c) unavailable") for l in lines)
    assert "RESULT factor(c) u(x1) -> [0], i(x1,D(2)) -> [1]" in lines
    assert "CHECK factor@roundtrip PASS" in lines
    assert lines[-1] == "SUMMARY checks=1 failed=0"


def test_i2_and_presentation_statements():
    text = """\
ring S = monogenic [-2,0]
compute i2 S
presentation P over S vars X=(0,1) rels [X^2 - 2]
verify presred P
"""
    lines = run_session(text).lines
    assert "RESULT i2(S) invariants: [0, 0]" in lines
    assert lines[-1] == "CHECK presred@all PASS"


def test_unknown_verify_token_is_a_parse_error():
    with pytest.raises(SessionError) as exc:
        run_session(Z2_SESSION + "verify nope M\n")
    assert (exc.value.line, exc.value.column) == (4, 8)
    assert "nope" in exc.value.message


def test_parse_errors_stop_before_anything_runs():
    with pytest.raises(SessionError) as exc:
        run_session("ring R = Z\n  frobnicate R\n")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_semantic_errors_carry_statement_index():
    with pytest.raises(SessionError) as exc:
        run_session("ring R = Z\n\ncompute p2 M\n")
    assert exc.value.line == 3
    assert "statement 2" in exc.value.message
    with pytest.raises(SessionError, match="already defined"):
        run_session("ring R = Z\nring R = Zmod 2\n")
    with pytest.raises(SessionError, match="needs 1 coordinates"):
        run_session("ring Z = Z\nmodule M over Z gens 1 rels [[(0,1)]]\n")


def test_exit_codes(tmp_path, capsys, monkeypatch):
    assert run_file(tmp_path, Z2_SESSION + "verify main M\n") == 0
    assert "CHECK main@all PASS" in capsys.readouterr().out
    assert run_file(tmp_path, "verify nope M\n") == 2
    assert "line 1, column 8" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.txt")]) == 2

    def failing(M, rng=None):
        rep = SequenceReport("main")
        rep.add(1, False, [1], "planted")
        return rep

    monkeypatch.setitem(cli.SEQUENCES, "main", failing)
    assert run_file(tmp_path, Z2_SESSION + "verify main M\n") == 1
    out = capsys.readouterr().out
    assert "CHECK main@1 FAIL witness=(1) [planted]" in out


def test_seed_option_reaches_randomized_checks(tmp_path, capsys):
    text = "ring R = Zmod 4\nverify relrho R\n"
    run_file(tmp_path, text, "--seed", "1")
    first = capsys.readouterr().out
    run_file(tmp_path, text, "--seed", "1")
    assert capsys.readouterr().out == first
