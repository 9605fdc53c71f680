"""
Exact rational evaluation of I.

Pipeline: simplify, return 0 on inadmissibility, factor over connected
components, tree-expand every vertex of valence >= 4, then sum
N^2 / prod_v theta_v over the trivalent terms.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .config import SpinNetConfig
from .errors import EvaluationError, GraphStructureError, ReductionBudgetError
from .graph import (
    LabeledGraph,
    Term,
    WeightedGraphSum,
    check_admissibility,
    expand_vertex,
    simplify,
)
from .recoupling import ExactValue, TrivalentNet, eval_trivalent_closed, vertex_theta

logger = logging.getLogger(__name__)

# vertex name -> (star positions kept on the vertex, star positions moved off)
SplitSpec = Tuple[Sequence[int], Sequence[int]]
Splits = Mapping[str, SplitSpec]


def split_edges(graph: LabeledGraph, vertex: str, split: SplitSpec) -> Tuple[List[int], List[int]]:
    """Translate a split given in star positions into edge indices."""
    star = graph.star(vertex)
    left, right = (list(group) for group in split)
    positions = sorted(left + right)
    if positions != list(range(len(star))):
        raise GraphStructureError(
            f"split {left}|{right} does not partition the {len(star)} edge-ends at {vertex}"
        )
    return [star[p][0] for p in left], [star[p][0] for p in right]


def _default_split(valence: int) -> SplitSpec:
    return [0, 1], list(range(2, valence))


def trivalent_terms(
    graph: LabeledGraph,
    splits: Optional[Splits] = None,
    max_terms: Optional[int] = None,
) -> WeightedGraphSum:
    """Simplified trivalent graphs whose weighted sum has the same I as ``graph``.

    A caller split for a vertex is used while the vertex still has the valence
    the split was written for; every other expansion takes the first two
    edge-ends against the rest. Both groups need at least two edge-ends so
    that every expansion strictly lowers the valence.
    """
    limit = max_terms if max_terms is not None else SpinNetConfig().max_expansion_terms
    splits = splits or {}
    pending = [Term(Fraction(1), graph)]
    done: List[Term] = []

    while pending:
        term = pending.pop()
        reduced = simplify(term.graph)
        if reduced.multiplier == 0 or not check_admissibility(reduced.graph).admissible:
            continue
        coefficient = term.coefficient * reduced.multiplier
        current = reduced.graph

        vertex = next((v for v in current.vertices if current.valence(v) >= 4), None)
        if vertex is None:
            done.append(Term(coefficient, current))
        else:
            valence = current.valence(vertex)
            split = splits.get(vertex)
            if split is not None and len(split[0]) + len(split[1]) != valence:
                logger.warning(
                    f"split at {vertex} covers {len(split[0]) + len(split[1])} edge-ends, "
                    f"valence is now {valence}; using the default split"
                )
                split = None
            if split is None:
                split = _default_split(valence)
            if min(len(split[0]), len(split[1])) < 2:
                raise GraphStructureError(
                    f"split at {vertex} needs at least two edge-ends in each group"
                )
            for expanded in expand_vertex(current, vertex, split_edges(current, vertex, split)):
                pending.append(Term(coefficient * expanded.coefficient, expanded.graph))

        if len(pending) + len(done) > limit:
            raise ReductionBudgetError(f"tree expansion exceeded {limit} terms")

    logger.debug(f"tree expansion produced {len(done)} trivalent terms")
    return WeightedGraphSum(tuple(done))


def eval_trivalent_graph(graph: LabeledGraph, step_budget: Optional[int] = None) -> ExactValue:
    """N^2 / prod_v theta_v for a graph whose vertices all have valence 3."""
    net = TrivalentNet.from_graph(graph)
    denominator = Fraction(1)
    for vertex in range(len(net.slots)):
        theta = vertex_theta(*net.vertex_spins(vertex))
        if theta == 0:
            raise EvaluationError(f"theta vanishes at vertex {vertex} of an admissible net")
        denominator *= theta
    value = eval_trivalent_closed(net, step_budget=step_budget)
    return value * value / denominator


def eval_relativistic_exact(
    graph: LabeledGraph,
    splits: Optional[Splits] = None,
    step_budget: Optional[int] = None,
    max_terms: Optional[int] = None,
) -> ExactValue:
    """Exact rational I.

    ``splits`` maps vertex names of the simplified graph to star-position
    splits. Different choices give the same value.
    """
    reduced = simplify(graph)
    if reduced.multiplier == 0:
        return Fraction(0)
    if not check_admissibility(reduced.graph).admissible:
        logger.debug("inadmissible after simplification: I = 0")
        return Fraction(0)

    value = reduced.multiplier
    cache: Dict[str, ExactValue] = {}
    for component in reduced.graph.components():
        piece = reduced.graph.subgraph(component)
        if not piece.edges:
            continue
        total = Fraction(0)
        for term in trivalent_terms(piece, splits=splits, max_terms=max_terms):
            key = _shape_key(term.graph)
            if key not in cache:
                cache[key] = eval_trivalent_graph(term.graph, step_budget=step_budget)
            total += term.coefficient * cache[key]
        value *= total
        if value == 0:
            break
    logger.info(f"exact evaluation: I = {value}")
    return value


def _shape_key(graph: LabeledGraph) -> str:
    # identical labelled graphs recur across expansion terms
    return ";".join(f"{e.end0},{e.end1},{e.spin}" for e in graph.edges)
