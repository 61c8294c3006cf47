# test_cli.py
import json
import logging

import pytest
from click.testing import CliRunner

from synmon.cli.main import cli
from synmon.langcore import compile_regex, dfa_to_json
from synmon.logging_config import FILE_LOGGERS, setup_logging


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_syn_table(runner):
    result = runner.invoke(cli, ["syn", "--variety", "set", "--alphabet", "ab", "--regex", "(ab)*"])
    assert result.exit_code == 0, result.stderr
    assert "size: 6" in result.stdout
    assert "*ε" in result.stdout
    assert "zero" in result.stdout
    assert result.stdout.startswith("seed: 0")


def test_syn_json_is_stable(runner):
    args = ["syn", "--variety", "inv", "--alphabet", "ab", "--regex", "(ab)*", "--format", "json", "--seed", "5"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    data = json.loads(first.stdout)
    assert data["size"] == 12
    assert data["seed"] == 5
    assert len(data["involution"]) == 12


def test_syn_csv_and_dot(runner):
    csv_result = runner.invoke(cli, ["syn", "--alphabet", "ab", "--regex", "a*", "--format", "csv"])
    assert csv_result.stdout.splitlines()[0] == "# seed=0"
    dot_result = runner.invoke(cli, ["syn", "--alphabet", "ab", "--regex", "a*", "--format", "dot"])
    assert "digraph syn {" in dot_result.stdout


def test_syn_dot_is_not_available_for_vect(runner):
    result = runner.invoke(cli, ["syn", "--variety", "vect", "--alphabet", "ab", "--regex", "a*", "--format", "dot"])
    assert result.exit_code == 2


def test_min_vect(runner):
    result = runner.invoke(cli, ["min", "--variety", "vect", "--prime", "3", "--alphabet", "ab",
                                 "--regex", "b*(ab*ab*)*"])
    assert result.exit_code == 0
    assert "vect(3)" in result.stdout
    assert "M_a" in result.stdout


def test_dual_report(runner):
    result = runner.invoke(cli, ["dual", "--alphabet", "ab", "--regex", "(ab)*"])
    assert result.exit_code == 0, result.stderr
    assert "atoms=6 syn=6 isomorphic=true" in result.stdout


def test_dual_json(runner):
    result = runner.invoke(cli, ["dual", "--alphabet", "ab", "--regex", "(ab)*", "--format", "json"])
    data = json.loads(result.stdout)
    assert data["syntactic"]["status"] == "success"
    assert data["minimal"]["data"]["min_states"] == 3


def test_check_passes(runner):
    result = runner.invoke(cli, ["check", "--variety", "pos", "--alphabet", "ab", "--regex", "(a|b)*a(a|b)*"])
    assert result.exit_code == 0, result.stdout
    assert "FAIL" not in result.stdout


def test_check_json(runner):
    result = runner.invoke(cli, ["check", "--variety", "jsl", "--alphabet", "ab", "--regex", "(ab)*",
                                 "--format", "json"])
    data = json.loads(result.stdout)
    assert data["passed"] is True
    assert [o["check"] for o in data["outcomes"]][:3] == ["structure", "reachable-simple", "recognition"]


def test_syntax_error_exits_2(runner):
    result = runner.invoke(cli, ["syn", "--variety", "set", "--alphabet", "ab", "--regex", "(("])
    assert result.exit_code == 2
    assert "Error:" in result.stderr
    assert "position 2" in result.stderr
    assert result.stdout == ""


@pytest.mark.parametrize("args", [
    ["syn", "--regex", "a"],
    ["syn", "--alphabet", "ab"],
    ["syn", "--variety", "group", "--alphabet", "ab", "--regex", "a"],
    ["syn", "--variety", "vect", "--prime", "4", "--alphabet", "ab", "--regex", "a"],
    ["syn", "--alphabet", "ab", "--regex", "c"],
])
def test_configuration_errors_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_capacity_guard_exits_3(runner):
    result = runner.invoke(cli, ["syn", "--variety", "jsl", "--alphabet", "ab", "--regex", "(a|b)*abb",
                                 "--max-jsl-states", "4"])
    assert result.exit_code == 3
    assert "capacity" in result.stderr


def test_dfa_file(runner, tmp_path):
    path = tmp_path / "even_a.json"
    path.write_text(dfa_to_json(compile_regex("b*(ab*ab*)*", "ab")), encoding="utf-8")
    result = runner.invoke(cli, ["syn", "--dfa", str(path)])
    assert result.exit_code == 0
    assert "size: 2" in result.stdout
    both = runner.invoke(cli, ["syn", "--dfa", str(path), "--alphabet", "ab", "--regex", "a"])
    assert both.exit_code == 2


def test_malformed_dfa_file(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"alphabet": "ab"}', encoding="utf-8")
    assert runner.invoke(cli, ["min", "--dfa", str(path)]).exit_code == 2


def test_eval_congruent(runner):
    result = runner.invoke(cli, ["eval", "--alphabet", "ab", "--regex", "(ab)*", "--elem", "aa", "--elem", "bb"])
    assert result.exit_code == 0
    assert "congruent=true" in result.stdout


def test_eval_witness(runner):
    result = runner.invoke(cli, ["eval", "--alphabet", "ab", "--regex", "(ab)*", "--elem", "ab", "--elem", "ε"])
    assert "congruent=false" in result.stdout
    assert "witness: x=a y=b" in result.stdout


def test_eval_ordered(runner):
    result = runner.invoke(cli, ["eval", "--variety", "pos", "--alphabet", "ab", "--regex", "(a|b)*a(a|b)*",
                                 "--elem", "ε", "--elem", "a", "--format", "json"])
    data = json.loads(result.stdout)
    assert data["leq"] is True and data["geq"] is False


def test_eval_bad_element(runner):
    result = runner.invoke(cli, ["eval", "--variety", "jsl", "--alphabet", "ab", "--regex", "a", "--elem", "ab"])
    assert result.exit_code == 2


def test_corpus(runner, tmp_path):
    path = tmp_path / "corpus.yaml"
    path.write_text(
        "alphabet: ab\nlanguages:\n  - name: ab-star\n    regex: \"(ab)*\"\n  - name: a-star\n    regex: \"a*\"\n",
        encoding="utf-8",
    )
    result = runner.invoke(cli, ["corpus", "--corpus", str(path), "--format", "json"])
    assert result.exit_code == 0, result.stdout
    data = json.loads(result.stdout)
    assert data["passed"] is True
    assert [entry["name"] for entry in data["languages"]] == ["ab-star", "a-star"]
    table = runner.invoke(cli, ["corpus", "--corpus", str(path)])
    assert "2/2 languages pass" in table.stdout


def test_check_capacity_guard_exits_3(runner):
    result = runner.invoke(cli, ["check", "--variety", "jsl", "--alphabet", "ab", "--regex", "(a|b)*abb",
                                 "--max-jsl-states", "4"])
    assert result.exit_code == 3
    assert "capacity" in result.stdout


def test_corpus_capacity_guard_exits_3(runner, tmp_path):
    path = tmp_path / "corpus.yaml"
    path.write_text("alphabet: ab\nlanguages:\n  - name: abb-suffix\n    regex: \"(a|b)*abb\"\n", encoding="utf-8")
    result = runner.invoke(cli, ["corpus", "--corpus", str(path), "--max-jsl-states", "4"])
    assert result.exit_code == 3


@pytest.mark.parametrize("args", [
    ["check", "--alphabet", "ab", "--regex", "a", "--max-length", "-1"],
    ["corpus", "--max-length", "-1"],
    ["corpus", "--workers", "0"],
])
def test_out_of_range_bounds_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_setup_logging_does_not_stack_handlers(tmp_path, monkeypatch):
    monkeypatch.setattr("synmon.logging_config.APP_LOGGING_PATH", str(tmp_path))
    setup_logging("DEBUG")
    counts = {name: len(logging.getLogger(name).handlers) for name in FILE_LOGGERS}
    setup_logging("INFO")
    assert {name: len(logging.getLogger(name).handlers) for name in FILE_LOGGERS} == counts
    assert all(count == 1 for count in counts.values())
