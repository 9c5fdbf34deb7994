"""Classical inverse formulas that the general closed form specializes to.

Five kinds are supported:

``undirected``  resistance matrix of a connected unit-weight graph
``tree``        distance matrix of a unit-weight tree
``wtree``       distance matrix of a tree with positive scalar weights
``mwtree``      distance matrix of a tree with SPD matrix weights
``digraph``     resistance matrix of a unit-weight balanced strongly connected digraph

Undirected inputs are encoded for the general pipeline by :func:`symmetrize`,
which gives each arc the edge weight; the digraph Laplacian of the encoding
then equals the classical Laplacian.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import HypothesisViolation, NotATree
from .graph import UndirectedGraph, WeightedDigraph, is_balanced, is_strongly_connected, symmetrize
from .laplacian import build_shadow_laplacian, laplacian_matrix
from .matrix import BlockMatrix, RMatrix, invert, pinv_laplacian_like, zeros
from .report import VerificationReport
from .resistance import ResistanceParams, build_resistance, inverse_closed_form

KINDS = ("undirected", "tree", "wtree", "mwtree", "digraph")


@dataclass(frozen=True)
class WeightedTree(UndirectedGraph):
    def __post_init__(self):
        super().__post_init__()
        if len(self.edges) != self.n - 1 or not self.is_connected():
            raise NotATree(f"{len(self.edges)} edges on {self.n} vertices do not form a spanning tree")

    @classmethod
    def from_graph(cls, h: UndirectedGraph) -> "WeightedTree":
        return cls(h.n, h.s, h.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def weight_sum(self) -> RMatrix:
        total = zeros(self.s)
        for e in self.edges:
            total = total + e.weight
        return total


def tree_distance_matrix(t: WeightedTree) -> BlockMatrix:
    """Block (i, j) is the sum of the weights on the unique i-j path; zero on the diagonal."""
    if not isinstance(t, WeightedTree):
        t = WeightedTree.from_graph(t)
    adj = {i: t.neighbors(i) for i in range(t.n)}
    grid = []
    for root in range(t.n):
        dist = {root: zeros(t.s)}
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j, w in adj[i]:
                if j not in dist:
                    dist[j] = dist[i] + w
                    queue.append(j)
        grid.append([dist[j] for j in range(t.n)])
    return BlockMatrix.from_block_grid(grid)


def degree_stack(t: WeightedTree) -> RMatrix:
    """F = (2 - d_1, ..., 2 - d_n)' kron I_s."""
    eye = RMatrix.identity(t.s)
    return RMatrix.vstack([eye * (2 - d) for d in t.degrees()])


def check_tree_identities(t: WeightedTree) -> VerificationReport:
    if not isinstance(t, WeightedTree):
        t = WeightedTree.from_graph(t)
    rep = VerificationReport()
    n, s = t.n, t.s
    D = tree_distance_matrix(t)
    L_tree = build_shadow_laplacian(t)
    digraph = symmetrize(t)
    rep.add_equal("tree.laplacian", "L(T) = L(symmetrized T)", L_tree, laplacian_matrix(digraph))
    rep.add_equal("tree.LDL", "L D L + 2 L = 0", L_tree @ D @ L_tree + L_tree * 2, zeros(n * s))

    bundle = build_resistance(digraph, ResistanceParams(1, 1))
    rep.add_equal("tree.distance_is_resistance", "D_ij = K_ii + K_jj - 2 K_ij", D, bundle.R)

    F = degree_stack(t)
    rep.add_equal("tree.tau", "tau_i = (2 - degree_i) I_s", bundle.tau, F)
    S = t.weight_sum()
    rep.add_equal("tree.D_tau", "D tau = [S, ..., S]'", D @ F, RMatrix.vstack([S] * n))
    rep.add_equal("tree.tau_sum", "sum of tau_i = 2 I_s", _block_sum(F, n, s), RMatrix.identity(s) * 2)
    rep.add_equal("tree.tau_D_tau", "tau' D tau = 2 S", F.T @ D @ F, S * 2)
    rep.add("tree.degree_sum", "sum of degrees = 2(n - 1)", sum(t.degrees()) == 2 * (n - 1))
    return rep


def _block_sum(stack: RMatrix, n: int, s: int) -> RMatrix:
    total = zeros(s)
    for i in range(n):
        total = total + stack.submatrix(range(i * s, (i + 1) * s), range(s))
    return total


# -- the five formulas ---------------------------------------------------------


def _require(cond: bool, message: str, which: str) -> None:
    if not cond:
        raise HypothesisViolation(message, which=which)


def _is_unit(w: RMatrix) -> bool:
    return w == RMatrix.identity(w.rows)


def _scalar_resistance(pinv: RMatrix) -> RMatrix:
    n = pinv.rows
    return RMatrix([[pinv[i, i] + pinv[j, j] - 2 * pinv[i, j] for j in range(n)] for i in range(n)])


def _undirected_resistance(h: UndirectedGraph) -> RMatrix:
    return _scalar_resistance(pinv_laplacian_like(build_shadow_laplacian(h)))


def _as_tree(obj) -> WeightedTree:
    if isinstance(obj, WeightedTree):
        return obj
    if isinstance(obj, UndirectedGraph):
        return WeightedTree.from_graph(obj)
    raise HypothesisViolation("expected an undirected tree", which="tree")


def inverse_undirected(h: UndirectedGraph) -> RMatrix:
    """R^-1 = -L/2 + tau tau' / (tau' R tau), tau_i = 2 - sum of r_ij over neighbours j."""
    _require(isinstance(h, UndirectedGraph), "expected an undirected graph", "undirected")
    _require(h.s == 1 and all(_is_unit(e.weight) for e in h.edges), "weights must all be 1", "unit_weights")
    _require(h.is_connected(), "graph must be connected", "connected")
    L = build_shadow_laplacian(h)
    R = _scalar_resistance(pinv_laplacian_like(L))
    tau = RMatrix([[2 - sum((R[i, j] for j, _ in h.neighbors(i)), 0)] for i in range(h.n)])
    q = (tau.T @ R @ tau)[0, 0]
    return L / -2 + (tau @ tau.T) / q


def inverse_unit_tree(t) -> RMatrix:
    """D^-1 = -L/2 + (2 - d)(2 - d)' / (2(n - 1))."""
    t = _as_tree(t)
    _require(t.s == 1 and all(_is_unit(e.weight) for e in t.edges), "tree weights must all be 1", "unit_weights")
    _require(t.n >= 2, "need at least one edge", "size")
    L = build_shadow_laplacian(t)
    tau = degree_stack(t)
    return L / -2 + (tau @ tau.T) / (2 * (t.n - 1))


def inverse_weighted_tree(t) -> RMatrix:
    """D^-1 = -L/2 + tau tau' / (2 sum of weights), tau = 2 - d."""
    t = _as_tree(t)
    _require(t.s == 1, "weights must be scalars", "scalar_weights")
    _require(t.n >= 2, "need at least one edge", "size")
    L = build_shadow_laplacian(t)
    tau = degree_stack(t)
    return L / -2 + (tau @ tau.T) / (2 * t.weight_sum()[0, 0])


def inverse_matrix_tree(t) -> BlockMatrix:
    """D^-1 = -L/2 + F S^-1 F' / 2 with F = (2 - d) kron I_s and S the weight sum."""
    t = _as_tree(t)
    _require(t.n >= 2, "need at least one edge", "size")
    L = build_shadow_laplacian(t)
    F = degree_stack(t)
    return BlockMatrix(L / -2 + (F @ invert(t.weight_sum()) @ F.T) / 2, t.s)


def inverse_unit_digraph(g: WeightedDigraph) -> RMatrix:
    """R^-1 = -L/2 + tau (tau' + diag(L^+)' M) / (tau' R tau), M = L - L'.

    Here tau_i = 2 - sum of r_ji over arcs (i, j).
    """
    _require(isinstance(g, WeightedDigraph), "expected a digraph", "digraph")
    _require(g.s == 1 and all(_is_unit(a.weight) for a in g.arcs), "arc weights must all be 1", "unit_weights")
    _require(bool(is_balanced(g)), "digraph must be balanced", "balanced")
    _require(is_strongly_connected(g), "digraph must be strongly connected", "strongly_connected")
    L = laplacian_matrix(g)
    K = pinv_laplacian_like(L)
    R = _scalar_resistance(K)
    tau = RMatrix([[2 - sum((R[a.head, i] for a in g.out_arcs(i)), 0)] for i in range(g.n)])
    diag_row = RMatrix([[K[i, i] for i in range(g.n)]])
    q = (tau.T @ R @ tau)[0, 0]
    return L / -2 + (tau @ (tau.T + diag_row @ (L - L.T))) / q


_FORMULAS = {
    "undirected": inverse_undirected,
    "tree": inverse_unit_tree,
    "wtree": inverse_weighted_tree,
    "mwtree": inverse_matrix_tree,
    "digraph": inverse_unit_digraph,
}


def _check_kind(kind: str) -> None:
    if kind not in _FORMULAS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def specialized_inverse(kind: str, obj) -> RMatrix:
    _check_kind(kind)
    return _FORMULAS[kind](obj)


def special_target(kind: str, obj) -> RMatrix:
    """The matrix each formula inverts, built without the general pipeline."""
    _check_kind(kind)
    if kind == "undirected":
        return _undirected_resistance(obj)
    if kind == "digraph":
        return _scalar_resistance(pinv_laplacian_like(laplacian_matrix(obj)))
    return tree_distance_matrix(_as_tree(obj))


def general_encoding(kind: str, obj) -> WeightedDigraph:
    _check_kind(kind)
    return obj if kind == "digraph" else symmetrize(obj)


def verify_special_case(kind: str, obj) -> VerificationReport:
    """Specialized formula vs. direct elimination vs. the general closed form."""
    Q = specialized_inverse(kind, obj)
    M = special_target(kind, obj)
    eye = RMatrix.identity(M.rows)
    rep = VerificationReport()
    rep.add_equal(f"special.{kind}.right_inverse", "Q M = I", Q @ M, eye)
    rep.add_equal(f"special.{kind}.left_inverse", "M Q = I", M @ Q, eye)
    rep.add_equal(f"special.{kind}.elimination", "Q = inverse of M by elimination", Q, invert(M))
    bundle = build_resistance(general_encoding(kind, obj), ResistanceParams(1, 1))
    rep.add_equal(f"special.{kind}.general_matrix", "M = resistance matrix of the encoding (a = b = 1)", M, bundle.R)
    rep.add_equal(f"special.{kind}.general_inverse", "Q = general closed form (a = b = 1)", Q,
                  inverse_closed_form(bundle, check=False))
    return rep


def random_special_instance(kind: str, seed: int, max_n: int = 8):
    """A random input satisfying the hypotheses of ``kind``."""
    import random

    from .graph import random_connected_graph, random_tree

    _check_kind(kind)
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    if kind == "undirected":
        return random_connected_graph(n, seed=seed, extra=rng.random() * 0.6, unit=True)
    if kind == "tree":
        return WeightedTree.from_graph(random_tree(n, 1, seed=seed, unit=True))
    if kind == "wtree":
        return WeightedTree.from_graph(random_tree(n, 1, seed=seed))
    if kind == "mwtree":
        return WeightedTree.from_graph(random_tree(n, rng.randint(1, 3), seed=seed))
    return _random_unit_balanced_digraph(n, rng)


def _random_unit_balanced_digraph(n: int, rng) -> WeightedDigraph:
    # arc-disjoint union of unit cycles, the first one Hamiltonian; a cycle
    # that would reuse an arc is redrawn
    from .graph import Arc

    order = rng.sample(range(n), n)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for _ in range(rng.randint(0, 3)):
        for _attempt in range(10):
            verts = rng.sample(range(n), rng.randint(2, n))
            new = {(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))}
            if not new & arcs:
                arcs |= new
                break
    one = RMatrix.identity(1)
    return WeightedDigraph(n, 1, tuple(Arc(t, h, one) for t, h in sorted(arcs)))
