import pytest
from hypothesis import given
from hypothesis import strategies as st

from balres.errors import NotBalanced, NotStronglyConnected
from balres.graph import UndirectedGraph, WeightedDigraph, random_balanced_digraph, random_tree, symmetrize, undirected_shadow
from balres.laplacian import (
    almost_positive_definite_on,
    build_laplacian,
    build_shadow_laplacian,
    check_structure,
    laplacian_matrix,
    probe_vectors,
)
from balres.matrix import RMatrix, is_row_diag_dominant

from . import oracles
from .conftest import grid
from .golden import L_MW, L_SCALAR, LPINV_MW


def test_matrix_weighted_laplacian_and_pinv(matrix_weighted):
    lap = build_laplacian(matrix_weighted)
    assert lap.L == grid(L_MW)
    assert lap.Ldag == grid(LPINV_MW)
    assert lap.Ldag.tolist() == oracles.sympy_pinv(lap.L)
    assert check_structure(lap).passed


def test_scalar_laplacian(scalar_digraph):
    assert laplacian_matrix(scalar_digraph) == grid(L_SCALAR)


def test_unbalanced_rejected():
    g = WeightedDigraph.from_edges(3, [(1, 2, 1), (2, 3, 1), (3, 1, 2)])
    with pytest.raises(NotBalanced) as info:
        build_laplacian(g)
    assert info.value.vertices


def test_disconnected_rejected():
    g = WeightedDigraph.from_edges(4, [(1, 2, 1), (2, 1, 1), (3, 4, 1), (4, 3, 1)])
    with pytest.raises(NotStronglyConnected):
        build_laplacian(g)


def test_singleton_laplacian():
    lap = build_laplacian(WeightedDigraph(1, 2, ()))
    assert lap.L.is_zero() and lap.Ldag.is_zero()


@given(st.integers(2, 6), st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_structure_on_random_graphs(n, s, cycles, seed):
    lap = build_laplacian(random_balanced_digraph(n, s, cycles, seed))
    rep = check_structure(lap)
    assert rep.passed, rep.format_text()
    assert almost_positive_definite_on(lap.L, probe_vectors(n * s, 5, seed))


@given(st.integers(2, 4), st.integers(1, 2), st.integers(1, 3), st.integers(0, 10**6))
def test_pinv_matches_sympy_on_random_graphs(n, s, cycles, seed):
    lap = build_laplacian(random_balanced_digraph(n, s, cycles, seed))
    assert lap.Ldag.tolist() == oracles.sympy_pinv(lap.L)


@given(st.integers(2, 6), st.integers(1, 4), st.integers(0, 10**6))
def test_scalar_laplacian_psd_by_minors_and_dominant(n, cycles, seed):
    lap = build_laplacian(random_balanced_digraph(n, 1, cycles, seed))
    assert oracles.psd_by_minors(lap.L)
    assert is_row_diag_dominant(lap.L) and is_row_diag_dominant(lap.L.T)


def test_structure_failure_has_witness():
    # a graph whose pseudoinverse is swapped for the wrong matrix must fail loudly
    lap = build_laplacian(random_balanced_digraph(3, 1, 2, 1))
    broken = type(lap)(lap.graph, lap.L, lap.L, lap.delta)
    rep = check_structure(broken)
    assert not rep.passed
    failed = rep["laplacian.projector_left"]
    assert failed.witness is not None and failed.witness.location.startswith("(")


def test_almost_pd_detects_violation():
    assert not almost_positive_definite_on(RMatrix([[1, 0], [0, -1]]), probe_vectors(2, 0))


def test_small_laplacians():
    two = WeightedDigraph.from_edges(2, [(1, 2, 3), (2, 1, 3)])
    assert build_laplacian(two).L == RMatrix([[1, -1], [-1, 1]]) / 3
    # shadow weight is 3/2
    assert build_shadow_laplacian(undirected_shadow(two)) == RMatrix([[1, -1], [-1, 1]]) * 2 / 3
    assert build_shadow_laplacian(UndirectedGraph(1, 1, ())).is_zero()
    tri = build_laplacian(WeightedDigraph.from_edges(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)]))
    assert tri.Ldag == tri.L.T / 3
    assert check_structure(build_laplacian(symmetrize(random_tree(6, 2, seed=5)))).passed


def test_shadow_laplacian_of_matrix_weighted(matrix_weighted):
    L = build_laplacian(matrix_weighted).L
    assert build_shadow_laplacian(undirected_shadow(matrix_weighted)) == L + L.T
