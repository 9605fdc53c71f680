"""
Shared fixtures: standard graphs and a seeded random admissible-graph generator.
"""

import math
import random
from pathlib import Path
from typing import List

import pytest

from spinnet.graph import Edge, LabeledGraph, check_admissibility, complete_graph, theta_graph

GRAPHS_DIR = Path(__file__).parent.parent / "graphs"


def random_graph(rng: random.Random, max_vertices: int = 4, max_spin: int = 4, max_edges: int = 6) -> LabeledGraph:
    """Connected random multigraph with random spins; not necessarily admissible."""
    count = rng.randint(2, max_vertices)
    names = [f"v{i}" for i in range(count)]
    edges = []
    # spanning path keeps it connected
    for i in range(1, count):
        edges.append(Edge(names[rng.randrange(i)], names[i], rng.randint(1, max_spin)))
    for _ in range(rng.randint(0, max(0, max_edges - len(edges)))):
        a, b = rng.sample(names, 2)
        edges.append(Edge(a, b, rng.randint(0, max_spin)))
    return LabeledGraph(tuple(names), tuple(edges))


def random_admissible_graphs(
    count: int,
    seed: int,
    max_vertices: int = 4,
    max_spin: int = 4,
    max_edges: int = 6,
    max_entries: int = 10**6,
) -> List[LabeledGraph]:
    """Deterministic list of admissible graphs drawn by rejection.

    Graphs whose largest vertex projector would exceed max_entries are skipped.
    """
    rng = random.Random(seed)
    graphs: List[LabeledGraph] = []
    while len(graphs) < count:
        graph = random_graph(rng, max_vertices, max_spin, max_edges)
        if not check_admissibility(graph).admissible or graph.total_spin == 0:
            continue
        if all(_projector_entries(graph, v) <= max_entries for v in graph.vertices):
            graphs.append(graph)
    return graphs


@pytest.fixture
def theta222():
    return theta_graph(2, 2, 2)


@pytest.fixture
def k4_spin2():
    return complete_graph(4, 2)


@pytest.fixture
def graphs_dir():
    return GRAPHS_DIR


def _projector_entries(graph: LabeledGraph, vertex: str) -> int:
    return math.prod(n + 1 for n in graph.incident_spins(vertex)) ** 2
