"""
Tests for the graph model: DSL, admissibility and exact rewrites.
"""

import math
from fractions import Fraction

import pytest

from spinnet.errors import GraphParseError, GraphStructureError
from spinnet.exact import eval_relativistic_exact
from spinnet.graph import (
    AdmissibilityFailure,
    Edge,
    LabeledGraph,
    check_admissibility,
    complete_graph,
    contract_edge,
    cycle_graph,
    disjoint_union,
    expand_vertex,
    fuse_parallel_edges,
    internal_spin_range,
    loop_graph,
    parse_graph,
    serialize_graph,
    simplify,
    theta_graph,
)
from spinnet.projector import contract_evaluate

from .conftest import random_admissible_graphs


class TestParseGraph:
    """Test the line-oriented graph DSL."""

    def test_parse_theta(self):
        """Test a theta graph parses with order preserved."""
        graph = parse_graph("v a\nv b\ne a b 1\ne a b 1\ne a b 2\n")
        assert graph.vertices == ("a", "b")
        assert [e.spin for e in graph.edges] == [1, 1, 2]

    def test_comments_blank_lines_and_crlf(self):
        """Test comments, blank lines and CRLF endings are ignored."""
        text = "# theta\r\n\r\nv a\r\nv b\r\n  # spins\r\ne a b 0\r\n"
        graph = parse_graph(text)
        assert graph.edges == (Edge("a", "b", 0),)

    def test_loop_edge(self):
        """Test a loop edge is accepted."""
        graph = parse_graph("v x\ne x x 3\n")
        assert graph.edges[0].is_loop

    def test_empty_text(self):
        """Test empty input gives the empty graph."""
        assert parse_graph("") == LabeledGraph()

    @pytest.mark.parametrize("text,line,column,message", [
        ("v a\ne a b 1\n", 2, 5, "unknown vertex"),
        ("v a\nv a\n", 2, 3, "declared twice"),
        ("v a\ne a a -1\n", 2, 7, "invalid spin"),
        ("v a\ne a a x\n", 2, 7, "invalid spin"),
        ("v a\ne a a 1000001\n", 2, 7, "out of range"),
        ("v a\ne a a " + "9" * 5000 + "\n", 2, 7, "out of range"),
        ("v a\ne a a 00001000001\n", 2, 7, "out of range"),
        ("v a-b\n", 1, 3, "invalid vertex name"),
        ("w a\n", 1, 1, "unknown statement"),
        ("v a\ne a a\n", 2, 1, "expected"),
    ])
    def test_parse_errors(self, text, line, column, message):
        """Test parse errors carry line and column."""
        with pytest.raises(GraphParseError, match=message) as info:
            parse_graph(text)
        assert info.value.line == line
        assert info.value.column == column

    def test_leading_zeros(self):
        """Test leading zeros do not count against the spin range."""
        graph = parse_graph("v a\ne a a 0000000002\n")
        assert graph.edges == (Edge("a", "a", 2),)

    def test_serialize_round_trip(self):
        """Test serialization is canonical and parses back identically."""
        graph = complete_graph(4, [1, 2, 3, 1, 2, 3])
        text = serialize_graph(graph)
        assert parse_graph(text) == graph
        assert serialize_graph(parse_graph(text)) == text


class TestLabeledGraph:
    """Test graph structure helpers."""

    def test_unknown_endpoint(self):
        """Test edges must name declared vertices."""
        with pytest.raises(GraphStructureError):
            LabeledGraph(("a",), (Edge("a", "b", 1),))

    def test_star_counts_loop_twice(self):
        """Test a loop contributes two edge-ends to the star."""
        graph = LabeledGraph(("a", "b"), (Edge("a", "a", 2), Edge("a", "b", 1)))
        assert graph.star("a") == [(0, 0), (0, 1), (1, 0)]
        assert graph.valence("a") == 3

    def test_components(self):
        """Test components of a disjoint union."""
        graph = disjoint_union(theta_graph(1, 1, 2), loop_graph(3))
        assert graph.components() == [["g0_v0", "g0_v1"], ["g1_v0"]]

    def test_prefactor_sign(self):
        """Test the global sign follows the total spin parity."""
        assert loop_graph(1).prefactor_sign == -1
        assert theta_graph(1, 1, 2).prefactor_sign == 1

    def test_with_spin(self):
        """Test relabelling one edge."""
        graph = cycle_graph([1, 1, 1]).with_spin(1, 3)
        assert [e.spin for e in graph.edges] == [1, 3, 1]


class TestAdmissibility:
    """Test vertex admissibility checks."""

    def test_admissible_theta(self):
        """Test an admissible theta graph."""
        assert check_admissibility(theta_graph(2, 3, 3)).admissible

    def test_parity_failure(self):
        """Test K4 with spin 1 fails parity everywhere."""
        report = check_admissibility(complete_graph(4, 1))
        assert not report.admissible
        assert set(report.failures) == {"v0", "v1", "v2", "v3"}
        assert report.failures["v0"] == [AdmissibilityFailure.PARITY]

    def test_closure_failure(self):
        """Test polygon closure failure for (1, 1, 4)."""
        report = check_admissibility(theta_graph(1, 1, 4))
        assert report.failures["v0"] == [AdmissibilityFailure.CLOSURE]

    def test_monovalent_vertex(self):
        """Test a monovalent vertex needs spin 0."""
        graph = LabeledGraph(("a", "b", "c"), (Edge("a", "b", 3), Edge("b", "c", 3)))
        report = check_admissibility(graph)
        assert "a" in report.failures and "b" not in report.failures


class TestSimplify:
    """Test loop removal, spin-0 deletion and bivalent smoothing."""

    @pytest.mark.parametrize("n", range(6))
    def test_loop(self, n):
        """Test a single loop reduces to its signed dimension."""
        result = simplify(loop_graph(n))
        assert result.multiplier == (-1) ** n * (n + 1)
        assert result.graph.edges == ()

    def test_zero_edges_dropped(self):
        """Test spin-0 edges disappear with multiplier 1."""
        graph = LabeledGraph(("a", "b"), (Edge("a", "b", 0),))
        result = simplify(graph)
        assert result.multiplier == 1
        assert result.graph.edges == ()

    def test_cycle_smoothing(self):
        """Test a spin-n cycle smooths down to a loop value."""
        result = simplify(cycle_graph([2, 2, 2]))
        # two smoothings (1/3 each) and one spin-2 loop (3)
        assert result.multiplier == Fraction(1, 3)
        assert result.graph.edges == ()

    def test_unequal_bivalent(self):
        """Test a bivalent vertex with unequal spins gives zero."""
        result = simplify(cycle_graph([1, 2, 1]))
        assert result.multiplier == 0

    def test_path_smoothing(self):
        """Test a bivalent middle vertex on a spin-1 path smooths with factor -1/2."""
        graph = LabeledGraph(("a", "b", "c"), (Edge("a", "b", 1), Edge("b", "c", 1)))
        result = simplify(graph)
        assert result.multiplier == Fraction(-1, 2)
        assert result.graph.vertices == ("a", "c")
        assert result.graph.edges == (Edge("a", "c", 1),)

    @pytest.mark.parametrize("graph", random_admissible_graphs(15, seed=53, max_vertices=4, max_spin=3, max_edges=6))
    def test_multiplier_against_contraction(self, graph):
        """Test I(input) = multiplier * I(result) with both sides contracted."""
        result = simplify(graph)
        expected = contract_evaluate(graph)
        actual = float(result.multiplier) * contract_evaluate(result.graph)
        assert math.isclose(actual, expected, rel_tol=1e-9, abs_tol=1e-12)

    def test_trivalent_untouched(self):
        """Test trivalent graphs are already simplified."""
        graph = complete_graph(4, 2)
        result = simplify(graph)
        assert result.graph == graph
        assert result.multiplier == 1


class TestRewrites:
    """Test fusion, expansion and contraction."""

    def test_fuse_parallel(self):
        """Test fusing spins (1, 2) gives c in {1, 3}."""
        terms = list(fuse_parallel_edges(theta_graph(1, 2, 1), 0, 1))
        assert [t.graph.edges[0].spin for t in terms] == [1, 3]
        assert all(t.coefficient == 1 for t in terms)
        assert all(len(t.graph.edges) == 2 for t in terms)

    def test_fuse_not_parallel(self):
        """Test fusion needs parallel edges."""
        with pytest.raises(GraphStructureError, match="not parallel"):
            fuse_parallel_edges(cycle_graph([1, 1, 2]), 0, 1)

    def test_internal_spin_range(self):
        """Test admissible internal spins."""
        assert internal_spin_range([1, 1], [1, 1]) == [0, 2]
        assert internal_spin_range([1, 1], [1, 3]) == [2]

    def test_expand_four_valent(self):
        """Test expanding a (1,1,1,1) vertex gives k = 0, 2 with coefficients 1, 3."""
        graph = LabeledGraph(("a", "b"), tuple(Edge("a", "b", 1) for _ in range(4)))
        terms = list(expand_vertex(graph, "a", ([0, 1], [2, 3])))
        assert [t.coefficient for t in terms] == [1, 3]
        assert [t.graph.edges[-1].spin for t in terms] == [0, 2]
        assert terms[0].graph.vertices == ("a", "a_1", "b")
        assert terms[0].graph.edges[2] == Edge("a_1", "b", 1)

    def test_expand_bad_split(self):
        """Test splits must partition the star into nonempty groups."""
        graph = theta_graph(1, 1, 2)
        with pytest.raises(GraphStructureError):
            expand_vertex(graph, "v0", ([0, 1, 2], []))
        with pytest.raises(GraphStructureError, match="partition"):
            expand_vertex(graph, "v0", ([0], [1]))

    def test_expand_loop_rejected(self):
        """Test expansion at a vertex with a loop is refused."""
        graph = LabeledGraph(("a", "b"), (Edge("a", "a", 1), Edge("a", "b", 1), Edge("a", "b", 1)))
        with pytest.raises(GraphStructureError, match="loop"):
            expand_vertex(graph, "a", ([0], [1, 2]))

    def test_contract_edge(self):
        """Test contraction keeps the smaller name."""
        graph = contract_edge(theta_graph(1, 1, 2), 2)
        assert graph.vertices == ("v0",)
        assert all(e.is_loop for e in graph.edges)

    def test_contract_loop_rejected(self):
        """Test loops cannot be contracted."""
        with pytest.raises(GraphStructureError):
            contract_edge(loop_graph(2), 0)


def _sum_exact(terms):
    return sum((t.coefficient * eval_relativistic_exact(t.graph) for t in terms), Fraction(0))


def _sum_contracted(terms):
    return sum(float(t.coefficient) * contract_evaluate(t.graph) for t in terms)


FOUR_VALENT = LabeledGraph(
    ("a", "b", "c"),
    (Edge("a", "b", 1), Edge("a", "b", 1), Edge("a", "c", 1), Edge("a", "c", 1), Edge("b", "c", 2)),
)


class TestRewriteSums:
    """Test rewrite sums preserve the invariant."""

    @pytest.mark.parametrize("graph,first,second", [
        (theta_graph(2, 2, 2), 0, 1),
        (theta_graph(1, 3, 2), 1, 2),
        (LabeledGraph(("a", "b"), tuple(Edge("a", "b", 1) for _ in range(4))), 0, 1),
        (LabeledGraph(("a", "b", "c"), (Edge("a", "b", 2), Edge("a", "b", 2), Edge("a", "c", 2), Edge("b", "c", 2))), 0, 1),
        (FOUR_VALENT, 2, 3),
    ])
    def test_fusion_sum(self, graph, first, second):
        """Test the fused terms add up to the input value."""
        terms = fuse_parallel_edges(graph, first, second)
        assert _sum_exact(terms) == eval_relativistic_exact(graph)
        assert math.isclose(_sum_contracted(terms), contract_evaluate(graph), rel_tol=1e-10, abs_tol=1e-12)

    @pytest.mark.parametrize("split", [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([3], [0, 1, 2])])
    def test_expansion_sum(self, split):
        """Test every split of a four-valent vertex reproduces the input value."""
        terms = expand_vertex(FOUR_VALENT, "a", split)
        assert _sum_exact(terms) == eval_relativistic_exact(FOUR_VALENT)
        assert math.isclose(_sum_contracted(terms), contract_evaluate(FOUR_VALENT), rel_tol=1e-10, abs_tol=1e-12)

    def test_expansion_sum_k5(self):
        """Test expanding a K5 vertex keeps the contracted value."""
        graph = complete_graph(5, 2)
        terms = expand_vertex(graph, "v0", ([0, 1], [2, 3]))
        assert math.isclose(_sum_contracted(terms), contract_evaluate(graph), rel_tol=1e-10)

    @pytest.mark.parametrize("split", [([0, 1], [2, 3]), ([0], [1, 2, 3]), ([1, 3], [0, 2])])
    def test_contract_undoes_expand(self, split):
        """Test contracting the new edge gives back the original graph."""
        graph = complete_graph(5, [1, 2, 3, 2, 1, 2, 3, 2, 1, 2])
        for term in expand_vertex(graph, "v0", split):
            restored = contract_edge(term.graph, len(term.graph.edges) - 1)
            assert restored == graph
            assert restored.incident_spins("v0") == graph.incident_spins("v0")
