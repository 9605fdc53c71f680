"""
Float evaluation of I by contracting invariant projectors.

Each vertex contributes the Haar average of the tensor product of the
representations on its incident edge-ends, which is the orthogonal projector
onto the SU(2)-invariant subspace. Each edge glues the (row, column) index
pair at its end 0 to the pair at its end 1; the end-1 side carries the
conjugate action. The order of pairwise merges comes from a greedy planner.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import SpinNetConfig
from .errors import DimensionCapError
from .graph import LabeledGraph

logger = logging.getLogger(__name__)

NULL_EIGENVALUE_TOL = 1e-9


@dataclass(frozen=True)
class VertexTensor:
    """Invariant projector on the tensor product of the end representations.

    ``entries`` has shape (d_1, ..., d_k, d_1, ..., d_k): all row indices
    first, then all column indices, with d_i = spins[i] + 1.
    """
    spins: Tuple[int, ...]
    dual_flags: Tuple[bool, ...]
    entries: np.ndarray
    rank: int

    @property
    def dimension(self) -> int:
        return math.prod(n + 1 for n in self.spins)

    def matrix(self) -> np.ndarray:
        return self.entries.reshape(self.dimension, self.dimension)


@dataclass(frozen=True)
class PlanStep:
    """Merge the tensors at positions left < right of the working list.

    The merged tensor is appended to the end of the list.
    """
    left: int
    right: int
    size: int


@dataclass(frozen=True)
class ContractionPlan:
    n_tensors: int
    steps: Tuple[PlanStep, ...]

    @property
    def max_intermediate(self) -> int:
        return max((step.size for step in self.steps), default=1)


def _generators(n: int, dual: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Real (J_z, J_+) for spin n, basis ordered by m = -n/2 .. n/2.

    The conjugate action has generators -J^T, so J_+ becomes -J_-.
    """
    j = n / 2.0
    m = np.arange(n + 1) - j
    jz = np.diag(m)
    jp = np.zeros((n + 1, n + 1))
    for k in range(n):
        jp[k + 1, k] = math.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    if dual:
        return -jz, -jp.T
    return jz, jp


def _total(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Sum over ends of identity ⊗ ... ⊗ op_k ⊗ ... ⊗ identity."""
    dims = [op.shape[0] for op in ops]
    total = np.zeros((math.prod(dims), math.prod(dims)))
    for k, op in enumerate(ops):
        term = np.ones((1, 1))
        for i, d in enumerate(dims):
            term = np.kron(term, op if i == k else np.eye(d))
        total += term
    return total


@lru_cache(maxsize=256)
def _projector_cached(spins: Tuple[int, ...], dual_flags: Tuple[bool, ...]) -> VertexTensor:
    gens = [_generators(n, dual) for n, dual in zip(spins, dual_flags)]
    jz = _total([g[0] for g in gens])
    jp = _total([g[1] for g in gens])

    weight = np.diag(jz)
    zero_weight = np.flatnonzero(np.abs(weight) < 1e-9)
    dims = tuple(n + 1 for n in spins)
    dimension = math.prod(dims)

    basis = np.zeros((dimension, 0))
    if zero_weight.size:
        restricted = jp[:, zero_weight]
        eigenvalues, vectors = np.linalg.eigh(restricted.T @ restricted)
        null = vectors[:, eigenvalues < NULL_EIGENVALUE_TOL]
        basis = np.zeros((dimension, null.shape[1]))
        basis[zero_weight, :] = null

    projector = basis @ basis.T
    entries = projector.reshape(dims + dims)
    entries.setflags(write=False)
    return VertexTensor(spins, dual_flags, entries, basis.shape[1])


def invariant_projector(
    spins: Sequence[int],
    dual_flags: Optional[Sequence[bool]] = None,
    dim_cap: Optional[int] = None,
) -> VertexTensor:
    """Orthogonal projector onto the invariant subspace of ⊗_k V_{n_k}."""
    spins = tuple(int(n) for n in spins)
    if not spins:
        raise ValueError("invariant_projector needs at least one spin")
    flags = tuple(bool(f) for f in dual_flags) if dual_flags is not None else (False,) * len(spins)
    if len(flags) != len(spins):
        raise ValueError("dual_flags must match spins in length")

    cap = dim_cap if dim_cap is not None else SpinNetConfig().dim_cap
    entries = math.prod(n + 1 for n in spins) ** 2
    if entries > cap:
        raise DimensionCapError(entries, cap, what=f"projector for spins {spins}")
    return _projector_cached(spins, flags)


# ---------------------------------------------------------------------------
# Network description


@dataclass
class _Network:
    """Per-vertex index labels after self-traces; label 2e is a row, 2e+1 a column."""
    labels: List[Tuple[int, ...]]
    dims: Dict[int, int]
    vertices: List[str]


def _network(graph: LabeledGraph) -> _Network:
    dims: Dict[int, int] = {}
    for e, edge in enumerate(graph.edges):
        dims[2 * e] = dims[2 * e + 1] = edge.spin + 1

    labels, vertices = [], []
    for vertex in graph.vertices:
        star = graph.star(vertex)
        if not star:
            continue
        rows = [2 * e for e, _ in star]
        cols = [2 * e + 1 for e, _ in star]
        labels.append(tuple(_open_labels(rows + cols)))
        vertices.append(vertex)
    return _Network(labels, dims, vertices)


def _open_labels(labels: Sequence[int]) -> List[int]:
    """Labels occurring once, in first-seen order; repeats are traced."""
    counts: Dict[int, int] = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    return [label for label in dict.fromkeys(labels) if counts[label] == 1]


def _size(labels: Sequence[int], dims: Dict[int, int]) -> int:
    return math.prod(dims[label] for label in labels)


def plan_contraction(graph: LabeledGraph) -> ContractionPlan:
    """Greedy plan: each step merges the pair with the smallest result.

    Ties go to the smaller combined input size, then to the earlier pair.
    """
    net = _network(graph)
    working = list(net.labels)
    steps = []
    while len(working) > 1:
        best = None
        for i in range(len(working)):
            for j in range(i + 1, len(working)):
                out = _open_labels(working[i] + working[j])
                key = (
                    _size(out, net.dims),
                    _size(working[i], net.dims) + _size(working[j], net.dims),
                    i,
                    j,
                )
                if best is None or key < best[0]:
                    best = (key, tuple(out))
        assert best is not None
        (size, _, i, j), out = best
        steps.append(PlanStep(i, j, size))
        working = [t for k, t in enumerate(working) if k not in (i, j)] + [out]
        logger.debug(f"plan step: merge {i},{j} -> {size} entries")
    return ContractionPlan(len(net.labels), tuple(steps))


def contract_evaluate(
    graph: LabeledGraph,
    dim_cap: Optional[int] = None,
    plan: Optional[ContractionPlan] = None,
) -> float:
    """I as (-1)^{sum n_e} times the full contraction of the vertex projectors."""
    cap = dim_cap if dim_cap is not None else SpinNetConfig().dim_cap
    net = _network(graph)

    tensors: List[np.ndarray] = []
    for vertex in net.vertices:
        star = graph.star(vertex)
        projector = invariant_projector(
            [graph.edges[e].spin for e, _ in star],
            [end == 1 for _, end in star],
            dim_cap=cap,
        )
        if projector.rank == 0:
            logger.debug(f"vertex {vertex} has no invariants: I = 0")
            return 0.0
        rows = [2 * e for e, _ in star]
        cols = [2 * e + 1 for e, _ in star]
        tensors.append(_einsum(projector.entries, rows + cols, _open_labels(rows + cols)))

    if plan is None:
        plan = plan_contraction(graph)
    if plan.n_tensors != len(tensors):
        raise ValueError(f"plan is for {plan.n_tensors} tensors, graph has {len(tensors)}")

    working = list(zip(tensors, net.labels))
    for step in plan.steps:
        (a, la), (b, lb) = working[step.left], working[step.right]
        out = _open_labels(la + lb)
        size = _size(out, net.dims)
        if size > cap:
            raise DimensionCapError(size, cap, what="intermediate tensor")
        merged = _einsum_pair(a, la, b, lb, out)
        working = [w for k, w in enumerate(working) if k not in (step.left, step.right)]
        working.append((merged, tuple(out)))

    value = float(np.prod([float(t) for t, _ in working])) if working else 1.0
    return graph.prefactor_sign * value


def _remap(*label_lists: Sequence[int]) -> List[List[int]]:
    """Relabel to 0..k-1 so that einsum's sublist format accepts them."""
    table: Dict[int, int] = {}
    for labels in label_lists:
        for label in labels:
            table.setdefault(label, len(table))
    return [[table[label] for label in labels] for labels in label_lists]


def _einsum(tensor: np.ndarray, labels: Sequence[int], out: Sequence[int]) -> np.ndarray:
    ins, outs = _remap(labels, out)
    return np.einsum(tensor, ins, outs)


def _einsum_pair(
    a: np.ndarray, la: Sequence[int], b: np.ndarray, lb: Sequence[int], out: Sequence[int]
) -> np.ndarray:
    ia, ib, io = _remap(la, lb, out)
    return np.einsum(a, ia, b, ib, io, optimize=True)
