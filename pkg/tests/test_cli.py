import io
import sys

import pytest

from twhier.cli import main, parse_dfa_file
from twhier.errors import ParseError
from twhier.monfile import parse_mon, read_mon, render_mon, write_mon


def run_cli(argv):
    buf_out, buf_err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = buf_out, buf_err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old
    return code, buf_out.getvalue(), buf_err.getvalue()


def test_ranker_eval_worked_example():
    code, out, _ = run_cli(["ranker", "eval", "XaYbXc", "bca"])
    assert code == 0
    assert out.strip() == "2"
    code, out, _ = run_cli(["ranker", "eval", "XaYbXc", "abac"])
    assert code == 0
    assert out.strip() == "undefined"


def test_ranker_condensed():
    code, out, _ = run_cli(["ranker", "condensed", "XaYbXc", "bca"])
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run_cli(["ranker", "condensed", "XaYbXc", "bac"])
    assert (code, out.strip()) == (0, "false")


def test_equiv_distinguishing_formula():
    code, out, _ = run_cli(["equiv", "--m", "1", "--n", "2", "ab", "ba"])
    assert code == 0
    assert out.strip() == ("not equivalent; distinguishing formula: "
                           "(true Fa (true Fb true))")
    code, out, _ = run_cli(["equiv", "--m", "1", "--n", "1", "ab", "ba"])
    assert (code, out.strip()) == (0, "equivalent")


def test_classify_language_report():
    code, out, _ = run_cli(["classify-language", "(d|b)*bdc(d|c)*"])
    assert code == 0
    lines = dict(line.split("=", 1) for line in out.strip().splitlines())
    assert lines["in_da"] == "true"
    assert lines["min_r"] == "3"
    assert lines["min_l"] == "3"
    assert lines["min_join"] == "3"


def test_classify_language_keyvalue():
    code, out, _ = run_cli(["classify-language", "a*",
                            "--format", "keyvalue"])
    assert code == 0
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    assert pairs["min_join"] == "2"
    assert pairs["in_da"] == "true"


def test_classify_language_determinism():
    argv = ["classify-language", "(d|b)*bdc(d|c)*", "--format", "keyvalue"]
    assert run_cli(argv) == run_cli(argv)


def test_classify_monoid_from_file(tmp_path, named):
    path = tmp_path / "u.mon"
    write_mon(path, named["right_zero"], {"a": 1, "b": 2})
    code, out, _ = run_cli(["classify-monoid", str(path)])
    assert code == 0
    lines = dict(line.split("=", 1) for line in out.strip().splitlines())
    assert lines["min_r"] == "3"
    assert lines["min_l"] == "2"
    assert lines["min_join"] == "2"
    assert lines["min_intersection"] == "3"


def test_check_identity_custom_and_family(tmp_path, named):
    path = tmp_path / "u.mon"
    write_mon(path, named["right_zero"])
    code, out, _ = run_cli(["check-identity", str(path),
                            "(z x)^w z = (z x)^w", "--format", "keyvalue"])
    assert code == 0
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    assert pairs["holds"] == "false"
    assert pairs["counterexample"] == "z=1,x=2"
    code, out, _ = run_cli(["check-identity", str(path), "--family", "L"])
    assert code == 0
    assert "holds=true" in out
    code, out, _ = run_cli(["check-identity", str(path), "--family", "W:2"])
    assert code == 0
    assert "holds=true" in out
    code, out, _ = run_cli(["check-identity", str(path), "--family", "R:2"])
    assert code == 0
    assert "holds=false" in out


def test_check_identity_labels_render(tmp_path, named):
    path = tmp_path / "u.mon"
    write_mon(path, named["right_zero"])
    monoid, _ = read_mon(path)
    assert monoid.labels is None  # labels are not part of the format


def test_witness_verify_report():
    code, out, _ = run_cli(["witness", "--m", "2", "--verify",
                            "--format", "keyvalue"])
    assert code == 0
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    assert pairs["in_r_next"] == "true"
    assert pairs["in_l_next"] == "true"
    assert pairs["w_holds"] == "false"
    assert pairs["witness_u"] == "dbdbdcdcd"
    assert pairs["witness_v"] == "dbdbcdcd"
    assert pairs["u_in_language"] == "true"
    assert pairs["v_in_language"] == "false"
    assert pairs["separation_verified"] == "true"
    assert "counterexample" in pairs


def test_witness_without_verify():
    code, out, _ = run_cli(["witness", "--m", "2"])
    assert code == 0
    assert "witness_u=dbdbdcdcd" in out


def test_itl_commands():
    code, out, _ = run_cli(["itl", "eval", "(true Fa (true Fb true))", "ab"])
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run_cli(["itl", "eval", "(true Fa (true Fb true))", "ba"])
    assert (code, out.strip()) == (0, "false")
    code, out, _ = run_cli(["itl", "definable", "--m", "2", "a*"])
    assert (code, out.strip()) == (0, "definable")
    code, out, _ = run_cli(["itl", "definable", "--m", "2", "(ab)*"])
    assert (code, out.strip()) == (0, "not definable")


def test_exit_codes():
    code, _, err = run_cli(["classify-language", "((a"])
    assert code == 2 and err
    code, _, err = run_cli(["classify-monoid", "/does/not/exist.mon"])
    assert code == 2
    code, _, err = run_cli(["classify-language", "(a|b)*a(a|b)*",
                            "--cap", "1"])
    assert code == 3


def test_boolean_no_answers_exit_zero():
    code, out, _ = run_cli(["itl", "definable", "--m", "2", "(ab)*"])
    assert code == 0
    assert out.strip() == "not definable"


def test_classify_language_from_dfa_file(tmp_path):
    path = tmp_path / "astar.dfa"
    path.write_text(
        "states 2\ninitial 0\naccepting 0\nalphabet ab\ndelta\n0 1\n1 1\n")
    dfa = parse_dfa_file(path)
    assert dfa.n_states == 2
    code, out, _ = run_cli(["classify-language", "--dfa", str(path)])
    assert code == 0
    assert "min_join=2" in out


def test_mon_roundtrip(named):
    for monoid in named.values():
        text = render_mon(monoid, {"a": 0})
        parsed, letters = parse_mon(text)
        assert parsed.rows == monoid.rows
        assert parsed.identity == monoid.identity
        assert letters == {"a": 0}


def test_mon_comments_and_errors():
    text = """# a comment
size 2
identity 0   # trailing comment
table
0 1
1 1
letter a 1
"""
    monoid, letters = parse_mon(text)
    assert monoid.size == 2
    assert letters == {"a": 1}
    with pytest.raises(ParseError):
        parse_mon("size 2\ntable\n0 1\n1 0\n")
    with pytest.raises(ParseError):
        parse_mon("size 2\nidentity 0\ntable\n0 1\n")


def test_alphabet_flag_widens():
    # over its own alphabet a* is the full language; over {a,b} it is not
    code, out, _ = run_cli(["classify-language", "a*", "--alphabet", "ab",
                            "--format", "keyvalue"])
    assert code == 0
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    assert pairs["monoid_size"] == "2"
    code, out, _ = run_cli(["classify-language", "a*",
                            "--format", "keyvalue"])
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    assert pairs["monoid_size"] == "1"


def test_witness_counterexample_follows_variable_order():
    code, out, _ = run_cli(["witness", "--m", "2", "--verify",
                            "--format", "keyvalue"])
    pairs = dict(line.split("\t") for line in out.strip().splitlines())
    names = [item.split("=")[0] for item in pairs["counterexample"].split(",")]
    assert names == ["z", "x1", "y1"]


def test_jobs_flag_does_not_change_output():
    base = run_cli(["classify-language", "(d|b)*bdc(d|c)*",
                    "--format", "keyvalue"])
    jobs = run_cli(["classify-language", "(d|b)*bdc(d|c)*",
                    "--format", "keyvalue", "--jobs", "3"])
    assert base == jobs
