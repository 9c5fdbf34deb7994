"""Matrix-weighted digraphs, their undirected shadows, and random generators.

Vertices are 0-based internally.  The ``from_edges`` constructors and the
file format use 1-based labels.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import BadWeight, DuplicateEdge, IndexOutOfRange, SelfLoop
from .matrix import RMatrix, invert, is_symmetric_pd, rational, zeros


def as_weight(w, s: int | None = None) -> RMatrix:
    """Accept an RMatrix, a nested list, or a scalar (meaning a 1x1 weight)."""
    if isinstance(w, RMatrix):
        m = w
    elif isinstance(w, (list, tuple)):
        m = RMatrix(w)
    else:
        m = RMatrix([[rational(w)]])
    if s is not None and m.shape != (s, s):
        raise BadWeight(f"weight has shape {m.shape}, expected {(s, s)}")
    return m


def _infer_order(edges) -> int:
    for e in edges:
        return as_weight(e[2]).rows
    return 1


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    weight: RMatrix


@dataclass(frozen=True)
class WeightedDigraph:
    """Simple digraph on vertices 0..n-1 with symmetric positive definite s x s weights."""

    n: int
    s: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        validate(self)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, s: int | None = None, one_based: bool = True):
        edges = list(edges)
        s = _infer_order(edges) if s is None else s
        shift = 1 if one_based else 0
        arcs = []
        for t, h, w in edges:
            try:
                weight = as_weight(w, s)
            except BadWeight as exc:
                raise BadWeight(f"edge ({t},{h}): {exc}", edge=(t, h)) from None
            arcs.append(Arc(t - shift, h - shift, weight))
        return cls(n, s, tuple(arcs))

    @cached_property
    def _index(self) -> dict:
        return {(a.tail, a.head): a for a in self.arcs}

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self._index

    def weight(self, i: int, j: int) -> RMatrix | None:
        arc = self._index.get((i, j))
        return None if arc is None else arc.weight

    def out_arcs(self, i: int) -> list[Arc]:
        return [a for a in self.arcs if a.tail == i]

    def in_arcs(self, j: int) -> list[Arc]:
        return [a for a in self.arcs if a.head == j]

    def reversed(self) -> "WeightedDigraph":
        return WeightedDigraph(self.n, self.s, tuple(Arc(a.head, a.tail, a.weight) for a in self.arcs))


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: RMatrix


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph with SPD weights; edges are stored with u < v."""

    n: int
    s: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(Edge(min(e.u, e.v), max(e.u, e.v), e.weight) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        _validate_undirected(self)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, s: int | None = None, one_based: bool = True):
        edges = list(edges)
        s = _infer_order(edges) if s is None else s
        shift = 1 if one_based else 0
        return cls(n, s, tuple(Edge(u - shift, v - shift, as_weight(w, s)) for u, v, w in edges))

    def neighbors(self, i: int) -> list[tuple[int, RMatrix]]:
        out = []
        for e in self.edges:
            if e.u == i:
                out.append((e.v, e.weight))
            elif e.v == i:
                out.append((e.u, e.weight))
        return out

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in (e.u, e.v))

    def is_connected(self) -> bool:
        return _reachable(self.n, {i: [j for j, _ in self.neighbors(i)] for i in range(self.n)}) == self.n


# shadow graphs are plain undirected graphs
UndirectedShadow = UndirectedGraph


def _check_vertex(n, i, where):
    if not 0 <= i < n:
        raise IndexOutOfRange(f"{where}: vertex {i + 1} outside 1..{n}")


def validate(g: WeightedDigraph) -> None:
    """Raise unless g is simple, in range, and every weight is symmetric PD."""
    if g.n < 1 or g.s < 1:
        raise IndexOutOfRange(f"need n >= 1 and s >= 1, got n={g.n}, s={g.s}")
    seen = set()
    for a in g.arcs:
        label = f"edge ({a.tail + 1},{a.head + 1})"
        _check_vertex(g.n, a.tail, label)
        _check_vertex(g.n, a.head, label)
        if a.tail == a.head:
            raise SelfLoop(f"{label} is a self-loop")
        if (a.tail, a.head) in seen:
            raise DuplicateEdge(f"{label} appears twice")
        seen.add((a.tail, a.head))
        if a.weight.shape != (g.s, g.s):
            raise BadWeight(f"{label}: weight shape {a.weight.shape}, expected {(g.s, g.s)}", edge=(a.tail, a.head))
        if not is_symmetric_pd(a.weight):
            raise BadWeight(f"{label}: weight is not symmetric positive definite", edge=(a.tail, a.head))


def _validate_undirected(h: UndirectedGraph) -> None:
    if h.n < 1 or h.s < 1:
        raise IndexOutOfRange(f"need n >= 1 and s >= 1, got n={h.n}, s={h.s}")
    seen = set()
    for e in h.edges:
        label = f"edge {{{e.u + 1},{e.v + 1}}}"
        _check_vertex(h.n, e.u, label)
        _check_vertex(h.n, e.v, label)
        if e.u == e.v:
            raise SelfLoop(f"{label} is a self-loop")
        if (e.u, e.v) in seen:
            raise DuplicateEdge(f"{label} appears twice")
        seen.add((e.u, e.v))
        if e.weight.shape != (h.s, h.s) or not is_symmetric_pd(e.weight):
            raise BadWeight(f"{label}: weight is not a symmetric positive definite {h.s}x{h.s} matrix", edge=(e.u, e.v))


def _reachable(n: int, adj: dict) -> int:
    if n == 0:
        return 0
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj.get(i, ()):
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen)


def is_strongly_connected(g: WeightedDigraph) -> bool:
    forward = {i: [] for i in range(g.n)}
    backward = {i: [] for i in range(g.n)}
    for a in g.arcs:
        forward[a.tail].append(a.head)
        backward[a.head].append(a.tail)
    return _reachable(g.n, forward) == g.n and _reachable(g.n, backward) == g.n


@dataclass(frozen=True)
class VertexBalance:
    vertex: int
    inflow: RMatrix
    outflow: RMatrix

    @property
    def balanced(self) -> bool:
        return self.inflow == self.outflow


@dataclass(frozen=True)
class BalanceReport:
    vertices: tuple[VertexBalance, ...]

    def __bool__(self) -> bool:
        return all(v.balanced for v in self.vertices)

    @property
    def balanced(self) -> bool:
        return bool(self)

    def unbalanced(self) -> list[VertexBalance]:
        return [v for v in self.vertices if not v.balanced]


def is_balanced(g: WeightedDigraph) -> BalanceReport:
    """Per vertex j: sum of W_ij^-1 over arcs into j vs. sum of W_ji^-1 over arcs out of j."""
    inflow = [zeros(g.s) for _ in range(g.n)]
    outflow = [zeros(g.s) for _ in range(g.n)]
    for a in g.arcs:
        w_inv = invert(a.weight)
        inflow[a.head] = inflow[a.head] + w_inv
        outflow[a.tail] = outflow[a.tail] + w_inv
    return BalanceReport(tuple(VertexBalance(j, inflow[j], outflow[j]) for j in range(g.n)))


def undirected_shadow(g: WeightedDigraph) -> UndirectedGraph:
    """Merge arcs into undirected edges; a bidirectional pair gets (W_ij^-1 + W_ji^-1)^-1."""
    merged: dict[tuple[int, int], RMatrix] = {}
    for a in g.arcs:
        key = (min(a.tail, a.head), max(a.tail, a.head))
        if key in merged:
            merged[key] = invert(invert(merged[key]) + invert(a.weight))
        else:
            merged[key] = a.weight
    return UndirectedGraph(g.n, g.s, tuple(Edge(u, v, w) for (u, v), w in sorted(merged.items())))


def symmetrize(h: UndirectedGraph) -> WeightedDigraph:
    """Both arcs for every undirected edge, each carrying the edge weight."""
    arcs = []
    for e in h.edges:
        arcs.append(Arc(e.u, e.v, e.weight))
        arcs.append(Arc(e.v, e.u, e.weight))
    return WeightedDigraph(h.n, h.s, tuple(arcs))


# -- random generators --------------------------------------------------------


def random_spd(rng: random.Random, s: int, spread: int = 3, max_den: int = 3) -> RMatrix:
    """(B'B + I) / d for a random integer B and integer d >= 1; always symmetric PD."""
    b = RMatrix([[rng.randint(-spread, spread) for _ in range(s)] for _ in range(s)])
    m = (b.T @ b + RMatrix.identity(s)) / rng.randint(1, max_den)
    assert is_symmetric_pd(m)
    return m


def random_positive_rational(rng: random.Random, upper: int = 5, max_den: int = 6):
    """Uniform-ish rational in (0, upper] with denominator at most max_den."""
    q = rng.randint(1, max_den)
    return rational(rng.randint(1, upper * q)) / q


def random_balanced_digraph(n: int, s: int, cycles: int, seed: int) -> WeightedDigraph:
    """Superpose random directed cycles, one SPD weight per cycle.

    The first cycle visits every vertex, so the result is strongly connected.
    Each cycle adds the same inverse weight into and out of each of its
    vertices; colliding arcs merge by adding inverse weights, which keeps every
    vertex balanced.
    """
    if n < 2 or cycles < 1 or s < 1:
        raise ValueError("need n >= 2, s >= 1 and cycles >= 1")
    rng = random.Random(seed)
    while True:
        inverse_weights: dict[tuple[int, int], RMatrix] = {}
        for c in range(cycles):
            k = n if c == 0 else rng.randint(2, n)
            verts = rng.sample(range(n), k)
            w_inv = invert(random_spd(rng, s))
            for idx, t in enumerate(verts):
                h = verts[(idx + 1) % k]
                if (t, h) in inverse_weights:
                    inverse_weights[(t, h)] = inverse_weights[(t, h)] + w_inv
                else:
                    inverse_weights[(t, h)] = w_inv
        arcs = tuple(Arc(t, h, invert(w)) for (t, h), w in sorted(inverse_weights.items()))
        g = WeightedDigraph(n, s, arcs)
        if is_balanced(g) and is_strongly_connected(g):
            return g


def _random_tree_pairs(n: int, rng: random.Random) -> list[tuple[int, int]]:
    order = rng.sample(range(n), n)
    return [(order[rng.randrange(i)], order[i]) for i in range(1, n)]


def random_tree(n: int, s: int = 1, seed: int = 0, unit: bool = False) -> UndirectedGraph:
    """Random labelled tree; unit weights, or random SPD (scalar when s = 1)."""
    rng = random.Random(seed)
    pairs = _random_tree_pairs(n, rng)
    weights = [RMatrix.identity(s) if unit else random_spd(rng, s) for _ in pairs]
    return UndirectedGraph(n, s, tuple(Edge(u, v, w) for (u, v), w in zip(pairs, weights)))


def random_connected_graph(n: int, seed: int = 0, extra: float = 0.4, unit: bool = True) -> UndirectedGraph:
    """Random spanning tree plus each other pair with probability ``extra``; scalar weights."""
    rng = random.Random(seed)
    pairs = {(min(u, v), max(u, v)) for u, v in _random_tree_pairs(n, rng)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < extra:
                pairs.add((u, v))
    edges = []
    for u, v in sorted(pairs):
        w = RMatrix.identity(1) if unit else RMatrix([[random_positive_rational(rng, 4, 3)]])
        edges.append(Edge(u, v, w))
    return UndirectedGraph(n, 1, tuple(edges))
