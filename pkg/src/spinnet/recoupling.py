"""
Exact A = -1 recoupling: closed forms and closed trivalent net evaluation.

The closed forms follow the Kauffman-Lins normalisation specialised at A = -1,
where quantum integers become ordinary integers:

    loop    Delta_n = (-1)^n (n+1)
    theta   theta(a,b,c) = (-1)^(m+n+p) (m+n+p+1)! m! n! p! / ((m+n)! (n+p)! (m+p)!)
    tet     Tet[a b e; c d f] (tetrahedral net)
    6j      {a b e; c d f} = Tet[a b e; c d f] Delta_e / (theta(a,d,e) theta(b,c,e))

A trivalent vertex (a, b, c) is realised as the integer tensor of the
polynomial (x1 y2 - y1 x2)^r (x2 y3 - y2 x3)^p (x3 y1 - y3 x1)^q in
Sym^a ⊗ Sym^b ⊗ Sym^c, with r = (a+b-c)/2, p = (b+c-a)/2, q = (c+a-b)/2,
indexed by the x-exponent on each leg. Edges pair an index k at the tail with
n-k at the head, weighted by (-1)^k / binom(n, k). This is the invariant
bilinear form, and the classical braiding is the plain swap of tensor
factors, so no planar presentation is needed. Moves act on this calculus
and their coefficients are computed from it exactly.
"""

import logging
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .config import SpinNetConfig
from .errors import EvaluationError, GraphStructureError, ReductionBudgetError
from .graph import Edge, LabeledGraph, is_admissible_tuple

logger = logging.getLogger(__name__)

ExactValue = Fraction


# ---------------------------------------------------------------------------
# Closed forms


def loop_value(n: int) -> ExactValue:
    """Delta_n = (-1)^n (n+1)."""
    return Fraction((-1) ** n * (n + 1))


def theta_value(a: int, b: int, c: int) -> ExactValue:
    """A = -1 value of the theta net; 0 when (a, b, c) is inadmissible."""
    if not is_admissible_tuple((a, b, c)):
        return Fraction(0)
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
    value = Fraction(
        factorial(m + n + p + 1) * factorial(m) * factorial(n) * factorial(p),
        factorial(m + n) * factorial(n + p) * factorial(m + p),
    )
    return value if (m + n + p) % 2 == 0 else -value


def tet_value(a: int, b: int, e: int, c: int, d: int, f: int) -> ExactValue:
    """Tet[a b e; c d f]: vertices (a,d,e), (b,c,e), (a,b,f), (c,d,f)."""
    triples = [(a, d, e), (b, c, e), (a, b, f), (c, d, f)]
    if not all(is_admissible_tuple(t) for t in triples):
        return Fraction(0)
    lows = [sum(t) // 2 for t in triples]
    highs = [(b + d + e + f) // 2, (a + c + e + f) // 2, (a + b + c + d) // 2]

    outer = 1
    for high in highs:
        for low in lows:
            outer *= factorial(high - low)
    edges = 1
    for spin in (a, b, c, d, e, f):
        edges *= factorial(spin)

    total = Fraction(0)
    for s in range(max(lows), min(highs) + 1):
        denominator = 1
        for low in lows:
            denominator *= factorial(s - low)
        for high in highs:
            denominator *= factorial(high - s)
        total += Fraction((-1) ** s * factorial(s + 1), denominator)
    return Fraction(outer, edges) * total


@dataclass(frozen=True)
class TetSixJ:
    tet: ExactValue
    sixj: ExactValue


def sixj(a: int, b: int, c: int, d: int, i: int, j: int) -> ExactValue:
    """Recoupling coefficient {a b i; c d j} of the A = -1 6j move."""
    denominator = theta_value(a, d, i) * theta_value(b, c, i)
    if denominator == 0:
        return Fraction(0)
    return tet_value(a, b, i, c, d, j) * loop_value(i) / denominator


def tet_6j(a: int, b: int, e: int, c: int, d: int, f: int) -> TetSixJ:
    """Tetrahedral net value and the derived 6j coefficient."""
    return TetSixJ(tet_value(a, b, e, c, d, f), sixj(a, b, c, d, e, f))


# ---------------------------------------------------------------------------
# Vertex tensors and the edge pairing

Key = Tuple[int, ...]


@lru_cache(maxsize=4096)
def vertex_tensor(a: int, b: int, c: int) -> Dict[Key, int]:
    """Sparse integer tensor of the trivalent vertex; empty if inadmissible."""
    if not is_admissible_tuple((a, b, c)):
        return {}
    r, p, q = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
    tensor: Dict[Key, int] = {}
    for i in range(r + 1):
        for j in range(p + 1):
            for l in range(q + 1):
                key = (r - i + l, i + p - j, j + q - l)
                coefficient = comb(r, i) * comb(p, j) * comb(q, l) * (-1) ** (i + j + l)
                tensor[key] = tensor.get(key, 0) + coefficient
    return {k: v for k, v in tensor.items() if v}


def pairing(n: int, k: int) -> Fraction:
    """Edge weight for tail index k, head index n - k."""
    return Fraction((-1) ** k, comb(n, k))


def hermitian(n: int, k: int) -> Fraction:
    """Invariant Hermitian weight of the monomial x^k y^(n-k)."""
    return Fraction(1, comb(n, k))


def vertex_norm(a: int, b: int, c: int) -> ExactValue:
    """Invariant Hermitian norm of the vertex tensor; equals |theta(a,b,c)|."""
    return sum(
        (Fraction(v * v) * hermitian(a, k[0]) * hermitian(b, k[1]) * hermitian(c, k[2])
         for k, v in vertex_tensor(a, b, c).items()),
        Fraction(0),
    )


def vertex_theta(a: int, b: int, c: int) -> ExactValue:
    """theta(a,b,c) computed from the vertex tensor: (-1)^((a+b+c)/2) * norm."""
    norm = vertex_norm(a, b, c)
    return norm if ((a + b + c) // 2) % 2 == 0 else -norm


# ---------------------------------------------------------------------------
# Trivalent nets

Slot = Tuple[int, int]  # (vertex, slot)


@dataclass(frozen=True)
class NetEdge:
    tail: int
    tail_slot: int
    head: int
    head_slot: int
    spin: int

    @property
    def ends(self) -> Tuple[Slot, Slot]:
        return (self.tail, self.tail_slot), (self.head, self.head_slot)

    def moved(self, old: Slot, new: Slot) -> "NetEdge":
        if (self.tail, self.tail_slot) == old:
            return replace(self, tail=new[0], tail_slot=new[1])
        if (self.head, self.head_slot) == old:
            return replace(self, head=new[0], head_slot=new[1])
        raise EvaluationError(f"edge {self} has no end at {old}")


@dataclass(frozen=True)
class TrivalentNet:
    """Closed trivalent multigraph with spins and no embedding data.

    ``slots[v]`` lists the edge index at each of the three slots of vertex v.
    ``free_loops`` are vertex-free closed strands.
    """
    slots: Tuple[Tuple[int, int, int], ...]
    edges: Tuple[NetEdge, ...]
    free_loops: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for index, edge in enumerate(self.edges):
            for vertex, slot in edge.ends:
                if not 0 <= vertex < len(self.slots) or self.slots[vertex][slot] != index:
                    raise GraphStructureError(f"edge {index} does not match vertex slots")

    @classmethod
    def from_graph(cls, graph: LabeledGraph) -> "TrivalentNet":
        """Net of a graph whose vertices all have valence 3 (isolated ones are dropped)."""
        names = [v for v in graph.vertices if graph.valence(v) > 0]
        index = {v: i for i, v in enumerate(names)}
        slots: List[List[int]] = []
        position: Dict[Tuple[int, int], Slot] = {}
        for v in names:
            star = graph.star(v)
            if len(star) != 3:
                raise GraphStructureError(f"vertex {v} has valence {len(star)}, not 3")
            slots.append([e for e, _ in star])
            for slot, (e, end) in enumerate(star):
                position[(e, end)] = (index[v], slot)
        edges = []
        for e, edge in enumerate(graph.edges):
            tail, head = position[(e, 0)], position[(e, 1)]
            edges.append(NetEdge(tail[0], tail[1], head[0], head[1], edge.spin))
        return cls(tuple(tuple(s) for s in slots), tuple(edges))  # type: ignore[misc]

    def vertex_spins(self, vertex: int) -> Tuple[int, int, int]:
        a, b, c = (self.edges[e].spin for e in self.slots[vertex])
        return a, b, c


# ---------------------------------------------------------------------------
# Sparse exact tensors keyed by (vertex, slot) legs


@dataclass
class _Tensor:
    legs: List[Slot]
    data: Dict[Key, Fraction]


def _vertex(state: "_State", v: int) -> _Tensor:
    spins = [state.edges[e].spin for e in state.slots[v]]
    data = {k: Fraction(x) for k, x in vertex_tensor(*spins).items()}
    return _Tensor([(v, 0), (v, 1), (v, 2)], data)


def _join(a: _Tensor, b: _Tensor, edges: Sequence[NetEdge]) -> _Tensor:
    """Contract a with b over the given edges (one end in each)."""
    pairs = []
    for edge in edges:
        tail, head = edge.ends
        if tail in a.legs:
            pairs.append((a.legs.index(tail), b.legs.index(head), edge.spin, True))
        else:
            pairs.append((a.legs.index(head), b.legs.index(tail), edge.spin, False))
    a_free = [i for i in range(len(a.legs)) if i not in {p[0] for p in pairs}]
    b_free = [i for i in range(len(b.legs)) if i not in {p[1] for p in pairs}]

    grouped: Dict[Key, List[Tuple[Key, Fraction]]] = {}
    for key, value in b.data.items():
        grouped.setdefault(tuple(key[p[1]] for p in pairs), []).append(
            (tuple(key[i] for i in b_free), value)
        )

    out: Dict[Key, Fraction] = {}
    for key, value in a.data.items():
        target = tuple(n - key[i] for i, _, n, _ in pairs)
        matches = grouped.get(target)
        if not matches:
            continue
        weight = value
        for i, _, n, a_is_tail in pairs:
            weight *= pairing(n, key[i] if a_is_tail else n - key[i])
        rest = tuple(key[i] for i in a_free)
        for b_rest, b_value in matches:
            k = rest + b_rest
            out[k] = out.get(k, Fraction(0)) + weight * b_value
    legs = [a.legs[i] for i in a_free] + [b.legs[i] for i in b_free]
    return _Tensor(legs, {k: v for k, v in out.items() if v})


def _trace(t: _Tensor, edges: Sequence[NetEdge]) -> _Tensor:
    """Contract edges whose two ends are both legs of t."""
    for edge in edges:
        tail, head = edge.ends
        i, j = t.legs.index(tail), t.legs.index(head)
        keep = [x for x in range(len(t.legs)) if x not in (i, j)]
        out: Dict[Key, Fraction] = {}
        for key, value in t.data.items():
            if key[i] + key[j] != edge.spin:
                continue
            k = tuple(key[x] for x in keep)
            out[k] = out.get(k, Fraction(0)) + value * pairing(edge.spin, key[i])
        t = _Tensor([t.legs[x] for x in keep], {k: v for k, v in out.items() if v})
    return t


def _permute(t: _Tensor, legs: Sequence[Slot]) -> Dict[Key, Fraction]:
    order = [t.legs.index(leg) for leg in legs]
    return {tuple(key[i] for i in order): v for key, v in t.data.items()}


# ---------------------------------------------------------------------------
# Reduction state


@dataclass
class _State:
    coefficient: Fraction
    slots: Dict[int, List[int]]
    edges: Dict[int, NetEdge]
    free_loops: List[int] = field(default_factory=list)
    next_edge: int = 0

    @classmethod
    def from_net(cls, net: TrivalentNet) -> "_State":
        return cls(
            Fraction(1),
            {v: list(s) for v, s in enumerate(net.slots)},
            dict(enumerate(net.edges)),
            list(net.free_loops),
            len(net.edges),
        )

    def copy(self) -> "_State":
        return _State(
            self.coefficient,
            {v: list(s) for v, s in self.slots.items()},
            dict(self.edges),
            list(self.free_loops),
            self.next_edge,
        )

    def neighbours(self, v: int) -> List[Tuple[int, int]]:
        """(edge, far vertex) for each slot of v."""
        result = []
        for slot, e in enumerate(self.slots[v]):
            edge = self.edges[e]
            far = edge.head if (edge.tail, edge.tail_slot) == (v, slot) else edge.tail
            result.append((e, far))
        return result

    def far_end(self, e: int, near: Slot) -> Slot:
        tail, head = self.edges[e].ends
        return head if tail == near else tail

    def open_tensor(self, vertices: Sequence[int]) -> _Tensor:
        """Contraction of the given vertices over the edges internal to them."""
        inside = set(vertices)
        order = list(vertices)
        tensor = _vertex(self, order[0])
        absorbed = {order[0]}
        done: Set[int] = set()
        for v in order[1:]:
            linking = [
                self.edges[e] for e in set(self.slots[v])
                if {self.edges[e].tail, self.edges[e].head} & absorbed
                and {self.edges[e].tail, self.edges[e].head} <= absorbed | {v}
                and not (self.edges[e].tail == self.edges[e].head == v)
            ]
            tensor = _join(tensor, _vertex(self, v), linking)
            done |= {id(edge) for edge in linking}
            absorbed.add(v)
        internal = [
            edge for e, edge in self.edges.items()
            if edge.tail in inside and edge.head in inside and id(edge) not in done
        ]
        return _trace(tensor, internal)

    def remove(self, vertices: Sequence[int]) -> None:
        gone = set(vertices)
        for v in vertices:
            del self.slots[v]
        for e in [e for e, edge in self.edges.items() if edge.tail in gone and edge.head in gone]:
            del self.edges[e]

    def component(self, start: int) -> List[int]:
        seen, queue = [start], deque([start])
        while queue:
            v = queue.popleft()
            for _, far in self.neighbours(v):
                if far not in seen:
                    seen.append(far)
                    queue.append(far)
        return seen


def _inner(x: Dict[Key, Fraction], y: Dict[Key, Fraction], spins: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for key, value in x.items():
        other = y.get(key)
        if other:
            weight = value * other
            for n, k in zip(spins, key):
                weight *= hermitian(n, k)
            total += weight
    return total


# ---------------------------------------------------------------------------
# Moves. Each returns None when it does not apply, otherwise a list of
# successor states whose values sum to the value of the input state.


def _close_free_loops(state: _State) -> Optional[List[_State]]:
    if not state.free_loops:
        return None
    for n in state.free_loops:
        state.coefficient *= loop_value(n)
    state.free_loops = []
    return [state]


def _close_small_component(state: _State) -> Optional[List[_State]]:
    """Evaluate a component that is a theta or contains a tadpole."""
    for v in state.slots:
        neighbours = state.neighbours(v)
        tadpole = any(far == v for _, far in neighbours)
        theta = all(far == neighbours[0][1] for _, far in neighbours)
        if tadpole or theta:
            component = state.component(v)
            scalar = state.open_tensor(component).data.get((), Fraction(0))
            state.coefficient *= scalar
            state.remove(component)
            logger.debug(f"closed component {component}: {scalar}")
            return [state] if scalar else []
    return None


def _bubble(state: _State) -> Optional[List[_State]]:
    """Two vertices joined by exactly two edges collapse to one edge."""
    for u in state.slots:
        by_far: Dict[int, List[int]] = {}
        for e, far in state.neighbours(u):
            by_far.setdefault(far, []).append(e)
        for w, shared in by_far.items():
            if w == u or len(shared) != 2:
                continue
            (e3,) = [e for e in state.slots[u] if e not in shared]
            (e4,) = [e for e in state.slots[w] if e not in shared]
            leg3 = (u, state.slots[u].index(e3))
            leg4 = (w, state.slots[w].index(e4))
            n3, n4 = state.edges[e3].spin, state.edges[e4].spin
            if n3 != n4:
                return []
            x = _permute(state.open_tensor([u, w]), [leg3, leg4])
            far3, far4 = state.far_end(e3, leg3), state.far_end(e4, leg4)
            tail3 = state.edges[e3].ends[0] == far3
            tail4 = state.edges[e4].ends[0] == far4

            # M[f3, f4] = sum over k3, k4 of B_e3 X B_e4, read from the far ends
            kappa = None
            for (k3, k4), value in x.items():
                f3, f4 = n3 - k3, n4 - k4
                if f3 + f4 != n3:
                    raise EvaluationError("bubble does not reduce to a multiple of the pairing")
                weight = value
                weight *= pairing(n3, f3 if tail3 else k3)
                weight *= pairing(n4, f4 if tail4 else k4)
                candidate = weight / pairing(n3, f3)
                if kappa is None:
                    kappa = candidate
                elif candidate != kappa:
                    raise EvaluationError("bubble does not reduce to a multiple of the pairing")
            if kappa is not None and len(x) != n3 + 1:
                raise EvaluationError("bubble does not reduce to a multiple of the pairing")
            state.remove([u, w])
            state.edges.pop(e3)
            state.edges.pop(e4)
            if kappa is None or kappa == 0:
                return []
            new = state.next_edge
            state.next_edge += 1
            state.edges[new] = NetEdge(far3[0], far3[1], far4[0], far4[1], n3)
            state.slots[far3[0]][far3[1]] = new
            state.slots[far4[0]][far4[1]] = new
            state.coefficient *= kappa
            return [state]
    return None


def _triangle(state: _State) -> Optional[List[_State]]:
    """Three mutually adjacent vertices collapse to one vertex."""
    for u in state.slots:
        for e_uv, v in state.neighbours(u):
            for e_vw, w in state.neighbours(v):
                if w in (u, v):
                    continue
                links = [e for e, far in state.neighbours(w) if far == u]
                if len(links) != 1:
                    continue
                inner = {e_uv, e_vw, links[0]}
                legs, spins, external = [], [], []
                for x in (u, v, w):
                    (e,) = [e for e in state.slots[x] if e not in inner]
                    legs.append((x, state.slots[x].index(e)))
                    spins.append(state.edges[e].spin)
                    external.append(e)
                tensor = _permute(state.open_tensor([u, v, w]), legs)
                target = {k: Fraction(x) for k, x in vertex_tensor(*spins).items()}
                if not target:
                    if tensor:
                        raise EvaluationError("triangle with inadmissible legs is nonzero")
                    return []
                kappa = _inner(target, tensor, spins) / _inner(target, target, spins)
                if any(tensor.get(k, 0) != kappa * target.get(k, 0) for k in set(tensor) | set(target)):
                    raise EvaluationError("triangle does not reduce to a vertex")
                state.remove([u, v, w])
                state.slots[u] = list(external)
                for slot, (e, leg) in enumerate(zip(external, legs)):
                    state.edges[e] = state.edges[e].moved(leg, (u, slot))
                state.coefficient *= kappa
                return [state] if kappa else []
    return None


def _shortest_cycle(state: _State) -> Optional[List[Tuple[int, int]]]:
    """Shortest cycle as a list of (vertex, edge to next vertex)."""
    best: Optional[List[Tuple[int, int]]] = None
    for root in sorted(state.slots):
        parent: Dict[int, Tuple[int, int]] = {root: (-1, -1)}
        depth = {root: 0}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e, far in state.neighbours(v):
                if e == parent[v][1]:
                    continue
                if far not in depth:
                    depth[far] = depth[v] + 1
                    parent[far] = (v, e)
                    queue.append(far)
                elif depth[far] >= depth[v]:
                    cycle = _cycle_through(parent, v, far, e)
                    if cycle and (best is None or len(cycle) < len(best)):
                        best = cycle
    return best


def _cycle_through(parent: Dict[int, Tuple[int, int]], v: int, w: int, e: int) -> Optional[List[Tuple[int, int]]]:
    def path(x: int) -> List[Tuple[int, int]]:
        steps = []
        while parent[x][0] != -1:
            steps.append((parent[x][0], parent[x][1], x))
            x = parent[x][0]
        return steps[::-1]

    pv, pw = path(v), path(w)
    common = 0
    while common < min(len(pv), len(pw)) and pv[common] == pw[common]:
        common += 1
    down = [(a, edge) for a, edge, _ in pv[common:]]
    up = [(b, edge) for _, edge, b in reversed(pw[common:])]
    cycle = down + [(v, e)] + up
    vertices = [c[0] for c in cycle]
    return cycle if len(set(vertices)) == len(vertices) else None


def _six_j_move(state: _State) -> Optional[List[_State]]:
    """Recouple an edge of a shortest cycle, shortening that cycle by one."""
    cycle = _shortest_cycle(state)
    if cycle is None or len(cycle) < 4:
        return None
    (u, i), (w, y) = cycle[0], cycle[1]
    x = cycle[-1][1]
    (a,) = [e for e in state.slots[u] if e not in (i, x)]
    (d,) = [e for e in state.slots[w] if e not in (i, y)]
    legs = [
        (u, state.slots[u].index(x)),
        (w, state.slots[w].index(y)),
        (u, state.slots[u].index(a)),
        (w, state.slots[w].index(d)),
    ]
    spins = [state.edges[e].spin for e in (x, y, a, d)]
    tensor = _permute(state.open_tensor([u, w]), legs)

    successors = []
    residual = dict(tensor)
    lo = max(abs(spins[0] - spins[1]), abs(spins[2] - spins[3]))
    hi = min(spins[0] + spins[1], spins[2] + spins[3])
    for j in range(lo, hi + 1):
        if (spins[0] + spins[1] + j) % 2 or (spins[2] + spins[3] + j) % 2:
            continue
        channel = _channel(spins, j)
        norm = _inner(channel, channel, spins)
        if norm == 0:
            continue
        coefficient = _inner(channel, tensor, spins) / norm
        if coefficient == 0:
            continue
        for k, value in channel.items():
            residual[k] = residual.get(k, Fraction(0)) - coefficient * value

        nxt = state.copy()
        nxt.edges.pop(i)
        new = nxt.next_edge
        nxt.next_edge += 1
        nxt.slots[u] = [x, y, new]
        nxt.slots[w] = [new, a, d]
        for e, leg, slot in ((x, legs[0], (u, 0)), (y, legs[1], (u, 1)), (a, legs[2], (w, 1)), (d, legs[3], (w, 2))):
            nxt.edges[e] = nxt.edges[e].moved(leg, slot)
        nxt.edges[new] = NetEdge(u, 2, w, 0, j)
        nxt.coefficient *= coefficient
        successors.append(nxt)

    if any(residual.values()):
        raise EvaluationError("6j move left a nonzero residual")
    logger.debug(f"6j move on edge {i}: {len(successors)} channels")
    return successors


@lru_cache(maxsize=4096)
def _channel_cached(nx: int, ny: int, na: int, nd: int, j: int) -> Tuple[Tuple[Key, Fraction], ...]:
    left = vertex_tensor(nx, ny, j)
    right = vertex_tensor(j, na, nd)
    out: Dict[Key, Fraction] = {}
    for (kx, ky, kj), lv in left.items():
        for (lj, ka, kd), rv in right.items():
            if kj + lj != j:
                continue
            key = (kx, ky, ka, kd)
            out[key] = out.get(key, Fraction(0)) + lv * rv * pairing(j, kj)
    return tuple((k, v) for k, v in out.items() if v)


def _channel(spins: Sequence[int], j: int) -> Dict[Key, Fraction]:
    return dict(_channel_cached(spins[0], spins[1], spins[2], spins[3], j))


_MOVES = (_close_free_loops, _close_small_component, _bubble, _triangle, _six_j_move)


def eval_trivalent_closed(net: TrivalentNet, step_budget: Optional[int] = None) -> ExactValue:
    """Exact A = -1 value N of a closed trivalent net.

    Moves are tried in priority order: free loop removal, closing a theta or
    tadpole component, the bubble move, the triangle move and finally a 6j
    move on an edge of a shortest cycle.
    """
    budget = step_budget if step_budget is not None else SpinNetConfig().step_budget
    pending = [_State.from_net(net)]
    total = Fraction(0)
    steps = 0
    while pending:
        state = pending.pop()
        if not state.slots and not state.free_loops:
            total += state.coefficient
            continue
        steps += 1
        if steps > budget:
            raise ReductionBudgetError(f"trivalent reduction exceeded {budget} steps")
        for move in _MOVES:
            successors = move(state)
            if successors is not None:
                pending.extend(s for s in successors if s.coefficient != 0)
                break
        else:
            raise EvaluationError("no reduction move applies")
    logger.debug(f"trivalent net reduced in {steps} steps")
    return total


def theta_net(a: int, b: int, c: int) -> TrivalentNet:
    return TrivalentNet(
        slots=((0, 1, 2), (0, 1, 2)),
        edges=(NetEdge(0, 0, 1, 0, a), NetEdge(0, 1, 1, 1, b), NetEdge(0, 2, 1, 2, c)),
    )


def tet_net(a: int, b: int, e: int, c: int, d: int, f: int) -> TrivalentNet:
    """Tetrahedral net with vertices (a,d,e), (b,c,e), (a,b,f), (c,d,f)."""
    graph = LabeledGraph(
        ("p", "q", "r", "s"),
        (
            Edge("p", "r", a),
            Edge("q", "r", b),
            Edge("q", "s", c),
            Edge("p", "s", d),
            Edge("p", "q", e),
            Edge("r", "s", f),
        ),
    )
    return TrivalentNet.from_graph(graph)
