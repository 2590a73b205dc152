"""Tests for the treepat command-line interface."""

import importlib
import json
import re
from pathlib import Path

import httpx
from click.testing import CliRunner

from treepat.engine import gf_set
from treepat.formats import GF_REPORT_SCHEMA, render_sequence
from treepat.ratfun import series
from treepat.trees import parse_tree

GOLDEN = Path(__file__).parent / "golden"


def _cli():
    return importlib.import_module("treepat.cli").cli


def _run(*args, **kwargs):
    return CliRunner().invoke(_cli(), list(args), **kwargs)


def _golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


class TestGf:
    """Tests for the gf command."""

    def test_plain_report(self):
        result = _run("gf", "--pattern", "(((L L) L) L)", "--terms", "8")
        assert result.exit_code == 0, result.output
        assert result.output == _golden("gf_left_comb_4.txt")

    def test_default_command_is_gf(self):
        result = _run("--pattern", "(((L L) L) L)", "--terms", "8")
        assert result.exit_code == 0, result.output
        assert result.output == _golden("gf_left_comb_4.txt")

    def test_closed_form_by_leaves(self):
        result = _run("gf", "--leaves", "5", "--terms", "8")
        assert result.exit_code == 0, result.output
        assert result.output == "g(x) = (x - 2x^2)/(1 - 3x + x^2)\n1,1,2,5,13,34,89,233\n"

    def test_pair_polynomial(self):
        result = _run("gf", "--pattern", "((L L) L)", "--pattern", "(L (L (L L)))", "--terms", "5")
        assert result.exit_code == 0, result.output
        assert result.output == "g(x) = x + x^2 + x^3\n1,1,1,0,0\n"

    def test_json_report(self):
        result = _run("gf", "--pattern", "((L L) (L L))", "--terms", "6", "--format", "json")
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert set(payload) == set(GF_REPORT_SCHEMA["required"])
        assert payload["patterns"] == ["((L L) (L L))"]
        assert payload["gf"] == {"num": [0, 1, -1], "den": [1, -2]}
        assert payload["sequence"] == [1, 1, 2, 4, 8, 16]
        assert abs(payload["growth_rate"] - 2.0) < 1e-9
        assert payload["oeis"] == []

    def test_oeis_offline(self):
        result = _run("gf", "--leaves", "5", "--terms", "8", "--oeis", "--offline")
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[-1] == "OEIS: A001519"

    def test_terms_from_env(self, monkeypatch):
        monkeypatch.setenv("TREEPAT_TERMS", "4")
        result = _run("gf", "--leaves", "4")
        assert result.output.splitlines()[1] == "1,1,2,4"

    def test_needs_pattern_or_leaves(self):
        assert _run("gf").exit_code == 1
        assert _run("gf", "--leaves", "4", "--pattern", "L").exit_code == 1

    def test_malformed_literal(self):
        result = _run("gf", "--pattern", "((L L")
        assert result.exit_code == 1
        assert "offset 5" in result.output

    def test_bad_config_is_usage_error(self, monkeypatch):
        monkeypatch.setenv("TREEPAT_TERMS", "lots")
        result = _run("gf", "--leaves", "4")
        assert result.exit_code == 1
        assert "output.terms" in result.output


class TestSequence:
    """Tests for the sequence command."""

    def test_bfile(self):
        result = _run("sequence", "--pattern", "((((L L) L) L) L)", "--terms", "8", "--format", "bfile")
        assert result.exit_code == 0, result.output
        assert result.output == _golden("sequence_left_comb_5.bfile")

    def test_contiguous_oracle_csv(self):
        result = _run(
            "sequence",
            "--pattern",
            "(((L L) L) L)",
            "--method",
            "oracle",
            "--contiguous",
            "--terms",
            "6",
            "--format",
            "csv",
        )
        assert result.exit_code == 0, result.output
        assert result.output == _golden("sequence_contiguous_left_comb_4.csv")

    def test_matches_library_output(self):
        patterns = ["((L (L L)) (L L))", "(L ((L L) L))"]
        args = ["sequence", "--terms", "12"]
        for literal in patterns:
            args += ["--pattern", literal]
        result = _run(*args)
        expected = series(gf_set([parse_tree(p) for p in patterns]), 12)[1:]
        assert result.output == render_sequence(expected, "plain")

    def test_gf_and_oracle_agree(self):
        gf = _run("sequence", "--pattern", "((L L) (L L))", "--terms", "9")
        oracle = _run("sequence", "--pattern", "((L L) (L L))", "--terms", "9", "--method", "oracle")
        assert gf.output == oracle.output

    def test_contiguous_needs_oracle(self):
        result = _run("sequence", "--pattern", "(((L L) L) L)", "--contiguous")
        assert result.exit_code == 1


class TestEnumerateAndOracle:
    """Tests for the enumerate and oracle commands."""

    def test_enumerate_lists_labels(self):
        result = _run("enumerate", "--n", "3")
        assert result.exit_code == 0, result.output
        assert result.output == "3_1 ((L L) L)\n3_2 (L (L L))\n"

    def test_enumerate_avoiders(self):
        result = _run("enumerate", "--n", "5", "--avoid", "((L L) L)")
        assert result.output == "5_14 (L (L (L (L L))))\n"

    def test_enumerate_max_height(self):
        result = _run("enumerate", "--n", "4", "--max-height", "2")
        assert result.output == "4_3 ((L L) (L L))\n"

    def test_enumerate_count(self):
        result = _run("enumerate", "--n", "6", "--count")
        assert result.output == "42\n"

    def test_oracle(self):
        result = _run("oracle", "--pattern", "(((L L) L) L)", "--n", "7")
        assert result.output == "32\n"

    def test_oracle_contiguous(self):
        result = _run("oracle", "--pattern", "(((L L) L) L)", "--n", "7", "--contiguous")
        assert result.output == "51\n"

    def test_zero_leaves_rejected(self):
        assert _run("enumerate", "--n", "0").exit_code == 1


class TestClassify:
    """Tests for the classify command."""

    def test_plain_pairs(self):
        result = _run("classify", "--leaves", "3", "--leaves", "4")
        assert result.exit_code == 0, result.output
        assert "Class A" in result.output
        assert "g(x) = x + x^2 + x^3" in result.output
        assert "{((L L) L), (L (L (L L)))}" in result.output

    def test_json_pairs(self):
        result = _run("classify", "--leaves", "4", "--leaves", "4", "--format", "json")
        payload = json.loads(result.output)
        assert [c["class"] for c in payload] == ["A", "B", "C"]
        assert sum(len(c["members"]) for c in payload) == 6

    def test_csv_singles(self):
        result = _run("classify", "--leaves", "4", "--terms", "6", "--format", "csv")
        lines = result.output.splitlines()
        assert lines[0] == "class,gf_num,gf_den,terms,members"
        assert lines[1].startswith("A,0 1 -1,1 -2,1 1 2 4 8 16,")
        assert len(lines) == 2

    def test_too_many_leaf_counts(self):
        assert _run("classify", "--leaves", "3", "--leaves", "4", "--leaves", "5").exit_code == 1


class TestGentree:
    """Tests for the gentree command."""

    def test_table_and_recurrence(self):
        result = _run("gentree", "--k", "5", "--terms", "8", "--table", "--recurrence")
        assert result.exit_code == 0, result.output
        assert result.output == _golden("gentree_k5.txt")

    def test_sequence_only(self):
        result = _run("gentree", "--k", "6", "--terms", "8")
        assert result.output == "1,1,2,5,14,41,122,365\n"

    def test_k_below_three(self):
        assert _run("gentree", "--k", "2").exit_code == 1


class TestPerm:
    """Tests for the perm subcommands."""

    def test_encode(self):
        result = _run("perm", "encode", "(((L L) L) L)")
        assert result.output == "123\n"

    def test_decode(self):
        result = _run("perm", "decode", "132")
        assert result.output == "((L L) (L L))\n"

    def test_decode_231_is_computation_error(self):
        result = _run("perm", "decode", "231")
        assert result.exit_code == 2
        assert "231" in result.output

    def test_count(self):
        result = _run("perm", "count", "--n", "4", "--avoid", "231", "--avoid", "321")
        assert result.output == "8\n"

    def test_sequence(self):
        result = _run("perm", "sequence", "--terms", "6", "--avoid", "231")
        assert result.exit_code == 0, result.output
        assert result.output == "1,2,5,14,42,132\n"

    def test_bad_permutation(self):
        assert _run("perm", "decode", "1224").exit_code == 1


class TestAnnotate:
    """Tests for the annotate command."""

    def test_cache_hit(self):
        result = _run("annotate", "1,1,2,5,13,34,89,233")
        assert result.exit_code == 0, result.output
        assert result.output == "A001519\n"

    def test_space_separated(self):
        result = _run("annotate", "1", "1", "2", "4", "9", "21", "51")
        assert result.output == "A001006\n"

    def test_network_lookup(self, httpx_mock, monkeypatch, tmp_path):
        monkeypatch.setenv("TREEPAT_OEIS_URL", "https://oeis.test/search")
        monkeypatch.setenv("TREEPAT_CACHE", str(tmp_path / "oeis.json"))
        httpx_mock.add_response(url=re.compile(r"https://oeis\.test/search\?.*"), json=[{"number": 7}])
        result = _run("annotate", "2,7,1,8,2,8")
        assert result.exit_code == 0, result.output
        assert result.output == "A000007\n"
        assert (tmp_path / "oeis.json").exists()

    def test_network_failure_prints_nothing(self, httpx_mock, monkeypatch):
        monkeypatch.setenv("TREEPAT_OEIS_URL", "https://oeis.test/search")
        httpx_mock.add_exception(httpx.ConnectError("offline"))
        result = _run("annotate", "2,7,1,8,2,8")
        assert result.exit_code == 0

    def test_too_few_terms(self):
        assert _run("annotate", "1,2,3").exit_code == 1

    def test_not_integers(self):
        assert _run("annotate", "1,2,x,4,5,6").exit_code == 1


class TestConfigShow:
    """Tests for config show."""

    def test_json(self, tmp_path):
        (tmp_path / ".treepat.toml").write_text("[compute]\nworkers = 2\n", encoding="utf-8")
        result = _run("config", "show", "--json", "--project-root", str(tmp_path))
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["resolved"]["compute"]["workers"] == 2
        assert payload["provenance"]["compute.workers"].startswith("repo:")
        assert payload["provenance"]["output.terms"] == "default"

    def test_plain(self):
        result = _run("config", "show")
        assert result.exit_code == 0, result.output
        assert "output.terms = 15  [default]" in result.output


class TestRootGroup:
    """Tests for global options and exit codes."""

    def test_help(self):
        result = _run("--help")
        assert result.exit_code == 0
        assert "classify" in result.output

    def test_version(self):
        result = _run("--version")
        assert result.exit_code == 0
        assert "0.1.0" in result.output

    def test_unknown_option(self):
        assert _run("gf", "--nope").exit_code == 1

    def test_log_dir_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv("TREEPAT_LOG_DIR", str(tmp_path / "logs"))
        result = _run("-v", "gentree", "--k", "4", "--terms", "3")
        assert result.exit_code == 0, result.output
        assert (tmp_path / "logs").is_dir()
