"""Block Laplacians of matrix-weighted digraphs and their pseudoinverses."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import NotBalanced, NotStronglyConnected
from .graph import UndirectedGraph, WeightedDigraph, is_balanced, is_strongly_connected, undirected_shadow
from .matrix import (
    BlockMatrix,
    RMatrix,
    block_all_ones,
    block_ones,
    invert,
    is_positive_definite,
    is_psd_via_quadratic_form,
    pinv_laplacian_like,
    rank,
    zeros,
)
from .report import VerificationReport, Witness


def _assemble(n: int, s: int, off_diagonal: dict) -> BlockMatrix:
    # diagonal block i is minus the sum of the off-diagonal blocks of row i,
    # so L U = 0 holds by construction
    grid = [[zeros(s) for _ in range(n)] for _ in range(n)]
    for (i, j), block in off_diagonal.items():
        grid[i][j] = grid[i][j] + block
    for i in range(n):
        acc = zeros(s)
        for j in range(n):
            if j != i:
                acc = acc - grid[i][j]
        grid[i][i] = acc
    return BlockMatrix.from_block_grid(grid)


def laplacian_matrix(g: WeightedDigraph) -> BlockMatrix:
    """L(G) with L_ij = -W_ij^-1 on arcs; no balance or connectivity required."""
    return _assemble(g.n, g.s, {(a.tail, a.head): -invert(a.weight) for a in g.arcs})


def build_shadow_laplacian(h: UndirectedGraph) -> BlockMatrix:
    off = {}
    for e in h.edges:
        inv = invert(e.weight)
        off[(e.u, e.v)] = -inv
        off[(e.v, e.u)] = -inv
    return _assemble(h.n, h.s, off)


@dataclass(frozen=True)
class LaplacianBundle:
    graph: WeightedDigraph
    L: BlockMatrix
    Ldag: BlockMatrix
    delta: BlockMatrix

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def s(self) -> int:
        return self.graph.s

    def K(self, i: int, j: int) -> RMatrix:
        """(i, j) block of the pseudoinverse."""
        return self.Ldag.block(i, j)

    @cached_property
    def U(self) -> RMatrix:
        return block_ones(self.n, self.s)

    @cached_property
    def diag_stack(self) -> RMatrix:
        """Delta(L^+) U: the diagonal blocks K_ii stacked vertically (ns x s)."""
        return RMatrix.vstack(self.Ldag.diagonal_blocks())

    @cached_property
    def diag_row(self) -> RMatrix:
        """U' Delta(L^+): the diagonal blocks K_ii side by side (s x ns)."""
        return RMatrix.hstack(self.Ldag.diagonal_blocks())


def build_laplacian(g: WeightedDigraph) -> LaplacianBundle:
    balance = is_balanced(g)
    if not balance:
        bad = [v.vertex + 1 for v in balance.unbalanced()]
        raise NotBalanced(
            f"vertices {bad} are not balanced (in-arc inverse weights must sum to out-arc inverse weights)",
            vertices=bad,
        )
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")
    L = laplacian_matrix(g)
    Ldag = pinv_laplacian_like(L)
    delta = BlockMatrix(RMatrix.block_diag(Ldag.diagonal_blocks()), g.s)
    return LaplacianBundle(g, L, Ldag, delta)


def check_structure(b: LaplacianBundle) -> VerificationReport:
    """Exact checks of the structural properties a balanced strongly connected Laplacian has."""
    report = VerificationReport()
    L, Ldag, n, s = b.L, b.Ldag, b.n, b.s
    ns = n * s

    report.add("laplacian.psd", "x' L x >= 0 for all x", is_psd_via_quadratic_form(L))

    r = rank(L)
    report.add(
        "laplacian.null_dim",
        "dim null(L) = dim null(L') = s",
        r == ns - s,  # rank(L') = rank(L)
        None if r == ns - s else Witness("rank(L)", str(r), str(ns - s)),
    )
    u = b.U
    report.add_equal("laplacian.null_right", "L U = 0, so col(J) lies in null(L)", L @ u, zeros(ns, s))
    report.add_equal("laplacian.null_left", "L' U = 0, so col(J) lies in null(L')", L.T @ u, zeros(ns, s))

    projector = RMatrix.identity(ns) - block_all_ones(n, s) / n
    report.add_equal("laplacian.projector_left", "L L^+ = I - J/n", L @ Ldag, projector)
    report.add_equal("laplacian.projector_right", "L^+ L = I - J/n", Ldag @ L, projector)

    bad = [i for i, k in enumerate(Ldag.diagonal_blocks()) if not is_positive_definite(k)]
    report.add(
        "laplacian.diag_blocks_pd",
        "every diagonal block K_ii of L^+ is positive definite",
        not bad,
        Witness(f"K_{bad[0] + 1}{bad[0] + 1}", "not PD", "PD") if bad else None,
    )

    shadow = build_shadow_laplacian(undirected_shadow(b.graph))
    report.add_equal("laplacian.shadow", "L(shadow graph) = L + L'", shadow, L + L.T)
    return report


def almost_positive_definite_on(L: RMatrix, vectors) -> bool:
    """For each x given: x' L x > 0, or x' L x = 0 and L x = 0."""
    for x in vectors:
        lx = L @ x
        q = (x.T @ lx)[0, 0]
        if q < 0 or (q == 0 and not lx.is_zero()):
            return False
    return True


def probe_vectors(dim: int, count: int, seed: int = 0, spread: int = 5) -> list[RMatrix]:
    """Basis vectors plus ``count`` random rational column vectors."""
    rng = random.Random(seed)
    out = [RMatrix([[1 if k == i else 0] for k in range(dim)]) for i in range(dim)]
    for _ in range(count):
        den = rng.randint(1, 4)
        out.append(RMatrix([[rng.randint(-spread, spread)] for _ in range(dim)]) / den)
    return out
