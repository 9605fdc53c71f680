"""
spinnet: the classical relativistic spin network invariant.

Evaluates the A = +-1 invariant I of a spin-labelled multigraph by exact
recoupling, by invariant-projector contraction and by Haar Monte Carlo over
SU(2)^V, and realises the 4-simplex geometry of the complete graph on five
vertices.
"""

__version__ = "0.1.0"

from .config import SpinNetConfig
from .errors import SpinNetError
from .exact import eval_relativistic_exact
from .graph import (
    Edge,
    LabeledGraph,
    check_admissibility,
    complete_graph,
    k5_graph,
    parse_graph,
    serialize_graph,
    simplify,
)
from .montecarlo import MCEstimate, mc_evaluate
from .projector import contract_evaluate

__all__ = [
    "SpinNetConfig",
    "SpinNetError",
    "Edge",
    "LabeledGraph",
    "parse_graph",
    "serialize_graph",
    "check_admissibility",
    "complete_graph",
    "k5_graph",
    "simplify",
    "eval_relativistic_exact",
    "contract_evaluate",
    "mc_evaluate",
    "MCEstimate",
]
