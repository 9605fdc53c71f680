"""
Spin-labelled multigraphs and their exact rewrites.

A graph carries a non-negative integer spin on every edge; spin n labels the
SU(2) representation of dimension n+1. Loops and parallel edges are allowed.
This module parses and serializes the line-oriented graph DSL, checks vertex
admissibility, and implements the rewrites that preserve the classical
invariant I up to a known exact factor: loop removal, spin-0 deletion,
bivalent smoothing, parallel-edge fusion, vertex tree-expansion and edge
contraction.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import GraphParseError, GraphStructureError

logger = logging.getLogger(__name__)

MAX_SPIN = 10**6

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_SPIN_RE = re.compile(r"[0-9]+\Z")
_TOKEN_RE = re.compile(r"[^ \t]+")

# (edge index, end) with end 0 or 1
EdgeEnd = Tuple[int, int]


def loop_factor(n: int) -> Fraction:
    """Signed loop value (-1)^n (n+1)."""
    return Fraction((-1) ** n * (n + 1))


def is_admissible_tuple(spins: Sequence[int]) -> bool:
    """True if the spins have even sum and satisfy polygon closure."""
    total = sum(spins)
    if total % 2:
        return False
    return all(2 * s <= total for s in spins)


@dataclass(frozen=True)
class Edge:
    """One edge of a LabeledGraph; end0 == end1 for a loop."""
    end0: str
    end1: str
    spin: int

    @property
    def is_loop(self) -> bool:
        """True when both ends sit on the same vertex."""
        return self.end0 == self.end1

    def other(self, vertex: str) -> str:
        """The endpoint opposite ``vertex``; for a loop this is ``vertex`` itself."""
        return self.end1 if self.end0 == vertex else self.end0

    def renamed(self, old: str, new: str) -> "Edge":
        """Copy with every end on ``old`` moved to ``new``. Spin and orientation are kept."""
        return Edge(
            new if self.end0 == old else self.end0,
            new if self.end1 == old else self.end1,
            self.spin,
        )


@dataclass(frozen=True)
class LabeledGraph:
    """Multigraph with loops and a spin on every edge.

    Vertex order and edge order are significant: they are preserved by
    serialization and fix the gauge choice of the Monte Carlo evaluator.
    """
    vertices: Tuple[str, ...] = ()
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise GraphStructureError("duplicate vertex identifier")
        for index, edge in enumerate(self.edges):
            if edge.end0 not in known or edge.end1 not in known:
                raise GraphStructureError(
                    f"edge {index} ({edge.end0}, {edge.end1}) names an unknown vertex"
                )
            if not 0 <= edge.spin <= MAX_SPIN:
                raise GraphStructureError(f"edge {index} spin {edge.spin} out of range")

    @property
    def total_spin(self) -> int:
        return sum(edge.spin for edge in self.edges)

    @property
    def prefactor_sign(self) -> int:
        """The global sign (-1)^(sum of spins)."""
        return -1 if self.total_spin % 2 else 1

    def star(self, vertex: str) -> List[EdgeEnd]:
        """Incident edge-ends of a vertex in edge order; a loop gives two."""
        if vertex not in self.vertices:
            raise GraphStructureError(f"unknown vertex: {vertex}")
        ends: List[EdgeEnd] = []
        for index, edge in enumerate(self.edges):
            if edge.end0 == vertex:
                ends.append((index, 0))
            if edge.end1 == vertex:
                ends.append((index, 1))
        return ends

    def valence(self, vertex: str) -> int:
        """Number of edge-ends at ``vertex``; a loop counts twice."""
        return len(self.star(vertex))

    def incident_spins(self, vertex: str) -> List[int]:
        """Spins in star order, one per edge-end."""
        return [self.edges[index].spin for index, _ in self.star(vertex)]

    def components(self) -> List[List[str]]:
        """Connected components as vertex lists, each in vertex order."""
        parent = {v: v for v in self.vertices}

        def find(v: str) -> str:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for edge in self.edges:
            a, b = find(edge.end0), find(edge.end1)
            if a != b:
                parent[b] = a
        groups: Dict[str, List[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def subgraph(self, vertices: Sequence[str]) -> "LabeledGraph":
        """Induced subgraph on a union of components."""
        keep = set(vertices)
        return LabeledGraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e.end0 in keep),
        )

    def with_spin(self, edge_index: int, spin: int) -> "LabeledGraph":
        """Copy with one edge relabelled."""
        edge = self._edge(edge_index)
        edges = list(self.edges)
        edges[edge_index] = Edge(edge.end0, edge.end1, spin)
        return LabeledGraph(self.vertices, tuple(edges))

    def without_edges(self, indices: Sequence[int]) -> "LabeledGraph":
        drop = set(indices)
        return LabeledGraph(
            self.vertices,
            tuple(e for i, e in enumerate(self.edges) if i not in drop),
        )

    def _edge(self, edge_index: int) -> Edge:
        if not 0 <= edge_index < len(self.edges):
            raise GraphStructureError(f"unknown edge index: {edge_index}")
        return self.edges[edge_index]


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    graph: LabeledGraph


@dataclass(frozen=True)
class WeightedGraphSum:
    """Finite formal sum of graphs with exact coefficients."""
    terms: Tuple[Term, ...] = ()

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


class AdmissibilityFailure(Enum):
    """Reason a vertex fails admissibility."""
    PARITY = "odd spin sum"
    CLOSURE = "polygon closure"


@dataclass
class AdmissibilityReport:
    """Per-vertex admissibility outcome."""
    admissible: bool
    failures: Dict[str, List[AdmissibilityFailure]] = field(default_factory=dict)


@dataclass
class SimplifyResult:
    """Rewritten graph and the exact factor with I(input) = multiplier * I(graph)."""
    graph: LabeledGraph
    multiplier: Fraction


# ---------------------------------------------------------------------------
# DSL


def parse_graph(text: str) -> LabeledGraph:
    """Parse graph DSL text into a LabeledGraph.

    Each nonblank line is ``v <name>``, ``e <name> <name> <spin>`` or a
    ``#`` comment. Vertices must be declared before they are used.
    """
    vertices: List[str] = []
    declared: set = set()
    edges: List[Edge] = []

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
        if not tokens or tokens[0][0].startswith("#"):
            continue

        keyword, column = tokens[0]
        if keyword == "v":
            if len(tokens) != 2:
                raise GraphParseError("expected 'v <name>'", line_no, column)
            name, name_col = tokens[1]
            _check_name(name, line_no, name_col)
            if name in declared:
                raise GraphParseError(f"vertex {name} declared twice", line_no, name_col)
            declared.add(name)
            vertices.append(name)
        elif keyword == "e":
            if len(tokens) != 4:
                raise GraphParseError("expected 'e <name> <name> <spin>'", line_no, column)
            ends = []
            for name, name_col in tokens[1:3]:
                _check_name(name, line_no, name_col)
                if name not in declared:
                    raise GraphParseError(f"unknown vertex: {name}", line_no, name_col)
                ends.append(name)
            spin_text, spin_col = tokens[3]
            if not _SPIN_RE.match(spin_text):
                raise GraphParseError(f"invalid spin: {spin_text}", line_no, spin_col)
            digits = spin_text.lstrip("0") or "0"
            if len(digits) > len(str(MAX_SPIN)) or int(digits) > MAX_SPIN:
                raise GraphParseError(
                    f"spin {spin_text[:20]} out of range [0, {MAX_SPIN}]", line_no, spin_col
                )
            spin = int(digits)
            edges.append(Edge(ends[0], ends[1], spin))
        else:
            raise GraphParseError(f"unknown statement: {keyword}", line_no, column)

    graph = LabeledGraph(tuple(vertices), tuple(edges))
    logger.debug(f"Parsed graph: {len(vertices)} vertices, {len(edges)} edges")
    return graph


def _check_name(name: str, line_no: int, column: int) -> None:
    if not _NAME_RE.match(name):
        raise GraphParseError(f"invalid vertex name: {name}", line_no, column)


def serialize_graph(graph: LabeledGraph) -> str:
    """Canonical DSL text; parse_graph inverts it exactly."""
    lines = [f"v {v}" for v in graph.vertices]
    lines += [f"e {e.end0} {e.end1} {e.spin}" for e in graph.edges]
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# Admissibility


def check_admissibility(graph: LabeledGraph) -> AdmissibilityReport:
    """Check parity and polygon closure at every vertex."""
    failures: Dict[str, List[AdmissibilityFailure]] = {}
    for vertex in graph.vertices:
        spins = graph.incident_spins(vertex)
        total = sum(spins)
        reasons = []
        if total % 2:
            reasons.append(AdmissibilityFailure.PARITY)
        if any(2 * s > total for s in spins):
            reasons.append(AdmissibilityFailure.CLOSURE)
        if reasons:
            failures[vertex] = reasons
    return AdmissibilityReport(admissible=not failures, failures=failures)


# ---------------------------------------------------------------------------
# Rewrites


def simplify(graph: LabeledGraph) -> SimplifyResult:
    """Delete spin-0 edges and loops, and smooth bivalent vertices.

    The returned multiplier satisfies I(graph) = multiplier * I(result).
    """
    multiplier = Fraction(1)
    current = graph

    while True:
        zero = [i for i, e in enumerate(current.edges) if e.spin == 0]
        if zero:
            current = current.without_edges(zero)
            continue

        loops = [i for i, e in enumerate(current.edges) if e.is_loop]
        if loops:
            for i in loops:
                multiplier *= loop_factor(current.edges[i].spin)
            current = current.without_edges(loops)
            continue

        smoothed = _smooth_one_bivalent(current)
        if smoothed is None:
            break
        current, factor = smoothed
        if factor == 0:
            logger.debug("Bivalent vertex with unequal spins: invariant vanishes")
            return SimplifyResult(LabeledGraph(), Fraction(0))
        multiplier *= factor

    logger.debug(
        f"Simplified {len(graph.edges)} -> {len(current.edges)} edges, "
        f"multiplier {multiplier}"
    )
    return SimplifyResult(current, multiplier)


def _smooth_one_bivalent(
    graph: LabeledGraph,
) -> Optional[Tuple[LabeledGraph, Fraction]]:
    for vertex in graph.vertices:
        star = graph.star(vertex)
        if len(star) != 2:
            continue
        (i, end_i), (j, end_j) = star
        a, b = graph.edges[i].spin, graph.edges[j].spin
        if a != b:
            return graph, Fraction(0)
        far_i = graph.edges[i].end1 if end_i == 0 else graph.edges[i].end0
        far_j = graph.edges[j].end1 if end_j == 0 else graph.edges[j].end0
        edges = list(graph.edges)
        edges[i] = Edge(far_i, far_j, a)
        del edges[j]
        vertices = tuple(v for v in graph.vertices if v != vertex)
        return LabeledGraph(vertices, tuple(edges)), Fraction((-1) ** a, a + 1)
    return None


def fuse_parallel_edges(graph: LabeledGraph, first: int, second: int) -> WeightedGraphSum:
    """Replace two parallel edges of spins a, b by one edge summed over spin c."""
    e1, e2 = graph._edge(first), graph._edge(second)
    if first == second:
        raise GraphStructureError("fusion needs two distinct edges")
    if e1.is_loop or e2.is_loop:
        raise GraphStructureError("fusion does not apply to loops")
    if {e1.end0, e1.end1} != {e2.end0, e2.end1}:
        raise GraphStructureError(f"edges {first} and {second} are not parallel")

    a, b = e1.spin, e2.spin
    terms = []
    for c in range(abs(a - b), a + b + 1, 2):
        fused = graph.with_spin(first, c).without_edges([second])
        terms.append(Term(Fraction(1), fused))
    return WeightedGraphSum(tuple(terms))


def internal_spin_range(left: Sequence[int], right: Sequence[int]) -> List[int]:
    """Spins k making both (left + [k]) and (right + [k]) admissible."""
    options = []
    for k in range(0, min(sum(left), sum(right)) + 1):
        if is_admissible_tuple(list(left) + [k]) and is_admissible_tuple(list(right) + [k]):
            options.append(k)
    return options


def expand_vertex(
    graph: LabeledGraph,
    vertex: str,
    split: Tuple[Sequence[int], Sequence[int]],
) -> WeightedGraphSum:
    """Split a vertex into two joined by a new edge, summed over its spin.

    ``split`` gives two groups of incident edge indices. The first group stays
    on ``vertex``; the second moves to a fresh vertex placed right after it.
    The new internal edge is appended last, oriented from ``vertex``.
    """
    star = graph.star(vertex)
    incident = [index for index, _ in star]
    if len(set(incident)) != len(incident):
        raise GraphStructureError(f"vertex {vertex} has a loop; simplify first")

    left, right = (list(group) for group in split)
    if not left or not right:
        raise GraphStructureError("each split group must be nonempty")
    if sorted(left + right) != sorted(incident):
        raise GraphStructureError(
            f"split {left}|{right} is not a partition of the edges at {vertex}: {incident}"
        )

    fresh = _fresh_name(graph, vertex)
    vertices = list(graph.vertices)
    vertices.insert(vertices.index(vertex) + 1, fresh)
    edges = list(graph.edges)
    for index in right:
        edges[index] = edges[index].renamed(vertex, fresh)

    left_spins = [graph.edges[i].spin for i in left]
    right_spins = [graph.edges[i].spin for i in right]
    terms = []
    for k in internal_spin_range(left_spins, right_spins):
        expanded = LabeledGraph(tuple(vertices), tuple(edges + [Edge(vertex, fresh, k)]))
        terms.append(Term(loop_factor(k), expanded))
    return WeightedGraphSum(tuple(terms))


def _fresh_name(graph: LabeledGraph, base: str) -> str:
    taken = set(graph.vertices)
    suffix = 1
    while f"{base}_{suffix}" in taken:
        suffix += 1
    return f"{base}_{suffix}"


def contract_edge(graph: LabeledGraph, edge_index: int) -> LabeledGraph:
    """Merge the endpoints of a non-loop edge and drop the edge.

    The merged vertex keeps the lexicographically smaller name.
    """
    edge = graph._edge(edge_index)
    if edge.is_loop:
        raise GraphStructureError("the contraction formula does not apply to a loop")
    keep, drop = sorted((edge.end0, edge.end1))
    vertices = tuple(v for v in graph.vertices if v != drop)
    edges = tuple(
        e.renamed(drop, keep) for i, e in enumerate(graph.edges) if i != edge_index
    )
    return LabeledGraph(vertices, edges)


# ---------------------------------------------------------------------------
# Builders


SpinSpec = Union[int, Sequence[int]]


def _spin_list(spins: SpinSpec, count: int) -> List[int]:
    """Broadcast a single spin or check a per-edge list has ``count`` entries."""
    if isinstance(spins, int):
        return [spins] * count
    spins = list(spins)
    if len(spins) != count:
        raise GraphStructureError(f"expected {count} spins, got {len(spins)}")
    return spins


def loop_graph(n: int) -> LabeledGraph:
    """One vertex ``v0`` with a single spin-n loop."""
    return LabeledGraph(("v0",), (Edge("v0", "v0", n),))


def theta_graph(a: int, b: int, c: int) -> LabeledGraph:
    """Two vertices joined by three edges of spins a, b, c."""
    return LabeledGraph(
        ("v0", "v1"),
        (Edge("v0", "v1", a), Edge("v0", "v1", b), Edge("v0", "v1", c)),
    )


def cycle_graph(spins: Sequence[int]) -> LabeledGraph:
    """Cycle v0 -> v1 -> ... -> v0 with edge i leaving vertex i.

    Every vertex is bivalent, so the invariant is nonzero only when all spins agree.
    """
    count = len(spins)
    names = tuple(f"v{i}" for i in range(count))
    edges = tuple(Edge(names[i], names[(i + 1) % count], s) for i, s in enumerate(spins))
    return LabeledGraph(names, edges)


def complete_graph(k: int, spins: SpinSpec) -> LabeledGraph:
    """K_k with edges on pairs (i, j), i < j, in lexicographic order."""
    pairs = list(combinations(range(k), 2))
    labels = _spin_list(spins, len(pairs))
    names = tuple(f"v{i}" for i in range(k))
    edges = tuple(Edge(names[i], names[j], s) for (i, j), s in zip(pairs, labels))
    return LabeledGraph(names, edges)


def k5_graph(spins: SpinSpec) -> LabeledGraph:
    """The complete graph on five vertices, dual to the boundary of a 4-simplex."""
    return complete_graph(5, spins)


def disjoint_union(first: LabeledGraph, second: LabeledGraph) -> LabeledGraph:
    """Union with vertices renamed to g0_* and g1_*."""
    vertices: List[str] = []
    edges: List[Edge] = []
    for tag, graph in (("g0", first), ("g1", second)):
        vertices += [f"{tag}_{v}" for v in graph.vertices]
        edges += [Edge(f"{tag}_{e.end0}", f"{tag}_{e.end1}", e.spin) for e in graph.edges]
    return LabeledGraph(tuple(vertices), tuple(edges))
