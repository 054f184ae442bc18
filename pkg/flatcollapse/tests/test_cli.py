import json

import pytest

from flatcollapse.cli import build_parser, inputs_digest, main, parse_point, run
from flatcollapse.errors import ParseError

from conftest import fixture_path

KB = fixture_path("KB.json")
HW = fixture_path("HW.json")
T2 = fixture_path("T2.json")
HW_E1 = fixture_path("hw_span_e1.json")
HEX3 = fixture_path("HEX3.json")
E1 = fixture_path("span_e1.json")
E2 = fixture_path("span_e2.json")
LINE_IRR = fixture_path("LINE_IRR.json")


def test_validate_reports_point_group():
    report = run(["validate", KB])
    assert report.exit_code == 0
    assert report.outcome["point_group_order"] == 2
    assert report.inputs_digest == inputs_digest([KB])


def test_main_prints_one_json_report(capsys):
    assert main(["torsion", HEX3]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert set(printed) == {"command", "inputs_digest", "outcome", "exit_code"}
    assert printed["outcome"]["torsion_free"] is False


def test_reports_are_deterministic():
    assert run(["smoothness", KB, "--subspace", E1]).to_json() == run(["smoothness", KB, "--subspace", E1]).to_json()


def test_smoothness_command():
    assert run(["smoothness", KB, "--subspace", E2]).outcome == {"smooth": True}
    assert run(["smoothness", KB, "--subspace", E1]).outcome["smooth"] is False


def test_collapse_writes_a_loadable_group(tmp_path):
    out = tmp_path / "collapsed.json"
    report = run(["collapse", KB, "--subspace", E2, "--out", str(out)])
    assert report.exit_code == 0
    assert report.outcome["invariants"] == {"holonomy_order": 1, "lattice_index": 2}
    assert report.outcome["chart"] == [["1/2", "0"]]
    again = run(["validate", str(out)])
    assert again.exit_code == 0 and again.outcome["dim"] == 1


def test_closure_command():
    report = run(["closure", T2, "--subspace", LINE_IRR])
    assert report.outcome["closure"] == [["1", "0"], ["0", "1"]]


def test_leaf_command():
    outcome = run(["leaf", KB, "--subspace", E1, "--point", "0,0"]).outcome
    assert outcome["vol_sq"] == "1/4"
    assert outcome["classification"] == {"kind": "exceptional", "covering_index": 2}
    outcome = run(["leaf", KB, "--subspace", E1, "--point", "0, 1/3"]).outcome
    assert outcome["classification"] == {"kind": "principal"}


def test_leaf_needs_an_invariant_subspace():
    outcome = run(["leaf", HEX3, "--subspace", E1, "--point", "0,0"])
    assert outcome.exit_code == 1
    assert outcome.outcome["error"] == "NotInvariant"


def test_singular_locus_command():
    outcome = run(["singular-locus", KB, "--subspace", E1]).outcome
    assert outcome["strata"][0]["representatives"] == [["0", "0"], ["0", "1/2"]]


def test_isequence_and_theorem_c_commands():
    seq = run(["isequence", HW])
    assert seq.exit_code == 0 and seq.outcome["entries"] == [1, 1, 1]
    result = run(["theorem-c", HW]).outcome
    assert [w["collapsed_i_sequence"] for w in result["witnesses"]] == [[1, 1], [1]]
    assert run(["theorem-c", KB]).outcome["applicable"] is False


def test_gh_verify_command(tmp_path):
    csv_path = tmp_path / "records.csv"
    report = run(["gh-verify", KB, "--subspace", E2, "--s", "1,0.5", "--pairs", "8", "--csv", str(csv_path)])
    assert report.exit_code == 0
    assert report.outcome["pass"] is True
    assert [r["s"] for r in report.outcome["records"]] == [1.0, 0.5]
    assert csv_path.read_text().splitlines()[0] == "s,d_s,max_chain_violation,max_approx_defect"


def test_inconclusive_outcomes_exit_with_two(tmp_path):
    report = run(["gh-verify", T2, "--subspace", E1, "--s", "1", "--pairs", "4", "--radius", "0.01"])
    assert report.exit_code == 2
    assert report.outcome["error"] == "RadiusTooSmall"


@pytest.mark.parametrize(
    "argv,error",
    [
        (["validate", "does-not-exist.json"], "ParseError"),
        (["torsion", E1], "ParseError"),
        (["smoothness", HEX3, "--subspace", E1], "NotBieberbach"),
        (["leaf", KB, "--subspace", E1, "--point", "0"], "ParseError"),
        (["gh-verify", KB, "--subspace", E1, "--s", "0"], "ValidationError"),
    ],
)
def test_failures_exit_with_one(argv, error):
    report = run(argv)
    assert report.exit_code == 1
    assert report.outcome["error"] == error


def test_bad_json_is_a_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(["validate", str(path)]).outcome["error"] == "ParseError"


def test_missing_command_is_a_usage_error():
    assert run([]).exit_code == 1


def test_parse_point():
    assert [str(e) for e in parse_point("1/2, 0", 2)] == ["1/2", "0"]
    with pytest.raises(ParseError):
        parse_point("1/2", 2)


def test_parser_knows_every_command():
    parser = build_parser()
    for command in ("validate", "torsion", "closure", "collapse", "smoothness", "leaf",
                    "singular-locus", "isequence", "theorem-c", "gh-verify"):
        assert parser.parse_args([command, KB] + (["--subspace", E1] if command not in
                                 ("validate", "torsion", "isequence", "theorem-c") else [])
                                 + (["--point", "0,0"] if command == "leaf" else [])).command == command


def test_collapse_of_hw_along_one_direction():
    report = run(["collapse", HW, "--subspace", HW_E1])
    assert report.exit_code == 0
    assert report.outcome["collapsed_along"] == [["1", "0", "0"]]
    assert report.outcome["group"]["dim"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["validate"],
        ["no-such-command", KB],
        ["isequence", HW, "--budget", "many"],
        ["leaf", KB, "--subspace", E1],
    ],
)
def test_usage_errors_exit_with_one(argv):
    report = run(argv)
    assert report.exit_code == 1
    assert report.outcome["error"] == "UsageError"


def test_usage_errors_still_print_a_report(capsys):
    assert main(["collapse", KB]) == 1
    assert json.loads(capsys.readouterr().out)["outcome"]["error"] == "UsageError"


def test_unwritable_outputs_are_reported(tmp_path):
    missing = tmp_path / "missing-dir"
    report = run(["collapse", KB, "--subspace", E2, "--out", str(missing / "cg.json")])
    assert (report.exit_code, report.outcome["error"]) == (1, "FileNotFoundError")
    report = run(["gh-verify", KB, "--subspace", E2, "--s", "1", "--pairs", "2", "--csv", str(missing / "r.csv")])
    assert (report.exit_code, report.outcome["error"]) == (1, "FileNotFoundError")


def test_config_and_arithmetic_failures_are_reported(monkeypatch):
    import flatcollapse.cli as cli

    def unreadable():
        raise RuntimeError("Failed to load metric config: permission denied")

    def breakdown(g, w):
        raise ZeroDivisionError("division by zero")

    monkeypatch.setattr(cli, "get_metric_config", unreadable)
    monkeypatch.setattr(cli, "is_smooth", breakdown)
    report = run(["gh-verify", KB, "--subspace", E2])
    assert (report.exit_code, report.outcome["error"]) == (1, "RuntimeError")
    report = run(["smoothness", KB, "--subspace", E2])
    assert (report.exit_code, report.outcome["error"]) == (1, "ZeroDivisionError")
