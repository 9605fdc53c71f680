"""
Tests for the command-line front end.
"""

import io
import json
import os
import pytest
from unittest.mock import patch

from spinnet.cli import (
    EXIT_COMPUTATION,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    format_text,
    graph_digest,
    parse_split,
    run_cli,
)
from spinnet.graph import parse_graph, theta_graph

from .conftest import GRAPHS_DIR


def graph_path(name):
    return str(GRAPHS_DIR / name)


def invoke(*argv, env=None):
    """Run the CLI with a clean environment and captured streams."""
    out, err = io.StringIO(), io.StringIO()
    with patch.dict(os.environ, env or {}, clear=True):
        code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def four_parallel(tmp_path):
    path = tmp_path / "parallel.sg"
    path.write_text("v a\nv b\n" + "e a b 1\n" * 4)
    return str(path)


class TestEval:
    """Test the eval subcommand."""

    def test_exact_theta(self):
        """Test the admissible theta graph evaluates to exactly 1."""
        code, out, err = invoke("eval", graph_path("theta.sg"))
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["method"] == "exact"
        assert result["value"] == {"kind": "rational", "num": "1", "den": "1"}
        assert result["graph_digest"].startswith("sha256:")
        assert err == ""

    def test_exact_k4(self):
        """Test K4 with spin 2 evaluates to 1/36."""
        code, out, _ = invoke("eval", graph_path("k4_spin2.sg"), "--method", "exact")
        assert code == EXIT_OK
        assert json.loads(out)["value"] == {"kind": "rational", "num": "1", "den": "36"}

    def test_contract_theta(self):
        """Test projector contraction reports a float without error bar."""
        code, out, _ = invoke("eval", graph_path("theta.sg"), "--method", "contract")
        assert code == EXIT_OK
        value = json.loads(out)["value"]
        assert value["kind"] == "float"
        assert value["value"] == pytest.approx(1.0, abs=1e-9)
        assert value["stderr"] == 0.0
        assert value["seed"] is None

    def test_mc_loop(self):
        """Test a spin-2 loop has zero-variance samples equal to 3."""
        code, out, _ = invoke("eval", graph_path("loop2.sg"), "--method", "mc", "--samples", "10", "--seed", "7")
        assert code == EXIT_OK
        value = json.loads(out)["value"]
        assert value["value"] == 3.0
        assert value["stderr"] == 0.0
        assert value["samples"] == 10
        assert value["seed"] == 7

    def test_mc_repeatable(self):
        """Test identical arguments give byte-identical output."""
        argv = ("eval", graph_path("k4_spin2.sg"), "--method", "mc", "--samples", "500", "--seed", "3")
        first = invoke(*argv)
        second = invoke(*argv)
        assert first == second

    def test_mc_workers_env(self):
        """Test the worker count does not change the estimate."""
        argv = ("eval", graph_path("k4_spin2.sg"), "--method", "mc", "--samples", "500", "--seed", "3")
        _, serial, _ = invoke(*argv, env={"SPINNET_CHUNK_SIZE": "64"})
        _, parallel, _ = invoke(*argv, env={"SPINNET_CHUNK_SIZE": "64", "SPINNET_WORKERS": "4"})
        assert serial == parallel

    def test_dimension_cap(self):
        """Test a projector over the cap exits with a computation error."""
        code, out, err = invoke("eval", graph_path("theta.sg"), "--method", "contract", env={"SPINNET_DIM_CAP": "1"})
        assert code == EXIT_COMPUTATION
        assert out == ""
        assert err.startswith("error: dimension-cap: ")
        assert len(err.strip().splitlines()) == 1

    def test_exact_fallback_notice(self, four_parallel):
        """Test exact evaluation over budget falls back to contraction."""
        code, out, err = invoke("eval", four_parallel, env={"SPINNET_MAX_TERMS": "1"})
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["method"] == "contract"
        assert result["value"]["value"] == pytest.approx(2.0, abs=1e-9)
        assert "notice:" in err

    def test_exact_fallback_disabled(self, four_parallel):
        """Test the fallback can be switched off."""
        code, out, err = invoke(
            "eval", four_parallel,
            env={"SPINNET_MAX_TERMS": "1", "SPINNET_EXACT_FALLBACK": "false"},
        )
        assert code == EXIT_COMPUTATION
        assert out == ""
        assert err.startswith("error: budget: ")

    def test_invalid_samples(self):
        """Test a nonpositive sample count is a usage-class error."""
        code, _, err = invoke("eval", graph_path("loop2.sg"), "--method", "mc", "--samples", "0")
        assert code == EXIT_USAGE
        assert err.startswith("error: sampling: ")


class TestCheckAndSimplify:
    """Test the check and simplify subcommands."""

    def test_check_admissible(self):
        """Test an admissible graph."""
        code, out, _ = invoke("check", graph_path("theta.sg"))
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["status"] == "admissible"
        assert result["failures"] == {}

    def test_check_inadmissible_exits_zero(self):
        """Test an inadmissible graph is reported, not failed."""
        code, out, _ = invoke("check", graph_path("bad.sg"))
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["status"] == "inadmissible"
        assert "a" in result["failures"]
        assert "b" not in result["failures"]

    def test_inadmissible_evaluates_to_zero(self):
        """Test exact evaluation of an inadmissible graph is 0."""
        code, out, _ = invoke("eval", graph_path("bad.sg"))
        assert code == EXIT_OK
        assert json.loads(out)["value"]["num"] == "0"

    def test_simplify_loop(self):
        """Test a lone loop simplifies to the empty graph with its loop value."""
        code, out, _ = invoke("simplify", graph_path("loop2.sg"))
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["multiplier"] == {"kind": "rational", "num": "3", "den": "1"}

    def test_text_format(self):
        """Test --format text before and after the subcommand."""
        code, before, _ = invoke("--format", "text", "check", graph_path("theta.sg"))
        assert code == EXIT_OK
        _, after, _ = invoke("check", graph_path("theta.sg"), "--format", "text")
        assert before == after
        assert before.splitlines()[0].split() == ["status", "admissible"]


class TestExpand:
    """Test the expand subcommand."""

    def test_expand_k5_vertex(self):
        """Test expanding a valence-4 vertex gives one term per admissible internal spin."""
        code, out, _ = invoke("expand", graph_path("k5_spin2.sg"), "--vertex", "v0", "--split", "(0 1)(2 3)")
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["vertex"] == "v0"
        assert result["split"] == [[0, 1], [2, 3]]
        assert len(result["terms"]) == 3
        for term in result["terms"]:
            graph = parse_graph(term["graph"])
            assert graph.valence("v0") == 3
            assert graph.valence("v0_1") == 3

    def test_split_uses_edge_indices(self):
        """Test the split lists global edge indices, not positions around the vertex."""
        code, out, _ = invoke("expand", graph_path("k5_spin2.sg"), "--vertex", "v1", "--split", "(0 4)(5 6)")
        assert code == EXIT_OK
        result = json.loads(out)
        assert len(result["terms"]) == 3
        for term in result["terms"]:
            graph = parse_graph(term["graph"])
            assert graph.valence("v1") == 3
            assert graph.valence("v1_1") == 3
            assert {graph.edges[5].end0, graph.edges[6].end0} == {"v1_1"}

    def test_split_star_positions_rejected(self):
        """Test indices of edges not at the vertex are refused."""
        code, _, err = invoke("expand", graph_path("k5_spin2.sg"), "--vertex", "v1", "--split", "(0 1)(2 3)")
        assert code == EXIT_INPUT
        assert err.startswith("error: structure: ")

    def test_bad_split_syntax(self):
        """Test a malformed split is a usage error."""
        code, _, err = invoke("expand", graph_path("k5_spin2.sg"), "--vertex", "v0", "--split", "0 1 | 2 3")
        assert code == EXIT_USAGE
        assert err.startswith("error: usage: ")

    def test_split_not_partition(self):
        """Test a split that misses an edge-end is a structure error."""
        code, _, err = invoke("expand", graph_path("k5_spin2.sg"), "--vertex", "v0", "--split", "(0 1)(2)")
        assert code == EXIT_INPUT
        assert err.startswith("error: structure: ")


class TestGeometry:
    """Test the geometry subcommand."""

    def test_json_lines(self):
        """Test one JSON record per sample."""
        code, out, _ = invoke("geometry", "--spins", *["2"] * 10, "--samples", "200", "--seed", "4")
        assert code == EXIT_OK
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["index"] for r in records] == list(range(200))
        assert any(r["status"] == "simplex" for r in records)
        for r in records:
            assert len(r["angles"]) == 10
            assert (r["weights"] is None) == (r["status"] != "simplex")

    def test_negative_spin(self):
        """Test a negative spin is an input error."""
        code, out, err = invoke("geometry", "--spins", "-1", *["0"] * 9, "--samples", "50")
        assert code == EXIT_INPUT
        assert out == ""
        assert err.startswith("error: structure: ")

    def test_wrong_spin_count(self):
        """Test nine spins are refused by the argument parser."""
        code, _, err = invoke("geometry", "--spins", *["2"] * 9)
        assert code == EXIT_USAGE
        assert err.startswith("error: usage: ")


class TestErrors:
    """Test error categories and exit codes."""

    def test_parse_error(self, tmp_path):
        """Test malformed input exits 2 with its line number."""
        path = tmp_path / "broken.sg"
        path.write_text("v a\ne a a two\n")
        code, out, err = invoke("eval", str(path))
        assert code == EXIT_INPUT
        assert out == ""
        assert err.startswith("error: parse: ")
        assert "line 2" in err

    def test_invalid_utf8(self, tmp_path):
        """Test undecodable bytes exit 2 with one line on stderr."""
        path = tmp_path / "binary.sg"
        path.write_bytes(b"v a\nv \xff\n")
        code, out, err = invoke("check", str(path))
        assert code == EXIT_INPUT
        assert out == ""
        assert err.startswith("error: parse: ")
        assert len(err.strip().splitlines()) == 1

    def test_huge_spin_token(self, tmp_path):
        """Test an overlong spin token is a parse error, not a crash."""
        path = tmp_path / "huge.sg"
        path.write_text("v a\ne a a " + "9" * 5000 + "\n")
        code, _, err = invoke("check", str(path))
        assert code == EXIT_INPUT
        assert err.startswith("error: parse: line 2")

    @pytest.mark.parametrize("argv", [
        ("eval", "loop2.sg", "--method", "mc", "--samples", "10", "--workers", "0"),
        ("geometry", "--spins", *["2"] * 10, "--samples", "10", "--workers", "0"),
    ])
    def test_zero_workers(self, argv):
        """Test --workers 0 is refused rather than replaced by the default."""
        argv = tuple(graph_path(a) if a.endswith(".sg") else a for a in argv)
        code, out, err = invoke(*argv)
        assert code == EXIT_USAGE
        assert out == ""
        assert err.startswith("error: sampling: ")

    def test_missing_file(self, tmp_path):
        """Test an unreadable file is an input error."""
        code, _, err = invoke("check", str(tmp_path / "absent.sg"))
        assert code == EXIT_INPUT
        assert err.startswith("error: parse: ")

    def test_unknown_command(self):
        """Test an unknown subcommand is a usage error."""
        code, _, err = invoke("integrate", graph_path("theta.sg"))
        assert code == EXIT_USAGE
        assert err.startswith("error: usage: ")

    def test_bad_environment(self):
        """Test an invalid environment variable is a configuration error."""
        code, _, err = invoke("check", graph_path("theta.sg"), env={"SPINNET_WORKERS": "0"})
        assert code == EXIT_USAGE
        assert err.startswith("error: config: ")


class TestHelpers:
    """Test CLI helper functions."""

    @pytest.mark.parametrize("text,expected", [
        ("(0 1)(2 3)", ([0, 1], [2, 3])),
        ("(0,2) (1,3,4)", ([0, 2], [1, 3, 4])),
    ])
    def test_parse_split(self, text, expected):
        """Test split parsing."""
        assert parse_split(text) == expected

    @pytest.mark.parametrize("text", ["(0 1)", "(0 1)(2 3)(4 5)", "(a b)(c d)", "()(0 1)", "x(0 1)(2 3)"])
    def test_parse_split_invalid(self, text):
        """Test malformed splits."""
        with pytest.raises(UsageError):
            parse_split(text)

    def test_graph_digest_stable(self):
        """Test the digest depends only on the canonical form."""
        assert graph_digest(theta_graph(2, 2, 2)) == graph_digest(theta_graph(2, 2, 2))
        assert graph_digest(theta_graph(2, 2, 2)) != graph_digest(theta_graph(2, 2, 4))

    def test_format_text_rational(self):
        """Test rationals print as num/den."""
        table = format_text({"value": {"kind": "rational", "num": "1", "den": "36"}})
        assert table == "value  1/36"
