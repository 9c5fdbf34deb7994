import pytest
from hypothesis import given
from hypothesis import strategies as st

from balres.errors import HypothesisViolation, NotATree
from balres.graph import UndirectedGraph, WeightedDigraph, random_tree
from balres.matrix import RMatrix
from balres.special import (
    KINDS,
    WeightedTree,
    check_tree_identities,
    random_special_instance,
    special_target,
    specialized_inverse,
    tree_distance_matrix,
    verify_special_case,
)

from . import oracles


def path(n, weights=None):
    weights = weights or [1] * (n - 1)
    return WeightedTree.from_graph(UndirectedGraph.from_edges(n, [(i, i + 1, w) for i, w in zip(range(1, n), weights)]))


def test_path_distance_matrix():
    d = tree_distance_matrix(path(4, [1, 2, "1/2"]))
    assert d == RMatrix([[0, 1, 3, "7/2"], [1, 0, 2, "5/2"], [3, 2, 0, "1/2"], ["7/2", "5/2", "1/2", 0]])


def test_unit_path_inverse_by_hand():
    # D^-1 for the path 1-2-3: -L/2 + tau tau'/4 with tau = (1, 0, 1)
    q = specialized_inverse("tree", path(3))
    assert q == RMatrix([["-1/4", "1/2", "1/4"], ["1/2", -1, "1/2"], ["1/4", "1/2", "-1/4"]])
    assert q @ tree_distance_matrix(path(3)) == RMatrix.identity(3)


@given(st.integers(2, 8), st.integers(0, 10**6))
def test_tree_distances_match_networkx(n, seed):
    t = WeightedTree.from_graph(random_tree(n, 1, seed))
    assert tree_distance_matrix(t).tolist() == oracles.nx_tree_distances(t)


def test_not_a_tree():
    with pytest.raises(NotATree):
        WeightedTree.from_graph(UndirectedGraph.from_edges(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)]))
    with pytest.raises(NotATree):
        WeightedTree.from_graph(UndirectedGraph.from_edges(4, [(1, 2, 1), (3, 4, 1)]))


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolation):
        specialized_inverse("tree", path(3, [2, 1]))
    with pytest.raises(HypothesisViolation):
        specialized_inverse("wtree", WeightedTree.from_graph(random_tree(3, 2, 0)))
    with pytest.raises(HypothesisViolation):
        specialized_inverse("undirected", UndirectedGraph.from_edges(3, [(1, 2, 2), (2, 3, 1)]))
    with pytest.raises(HypothesisViolation):
        specialized_inverse("digraph", WeightedDigraph.from_edges(2, [(1, 2, 2), (2, 1, 2)]))
    with pytest.raises(ValueError):
        specialized_inverse("forest", path(3))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", range(12))
def test_special_cases_agree(kind, seed):
    obj = random_special_instance(kind, seed)
    rep = verify_special_case(kind, obj)
    assert rep.passed, rep.format_text()


@pytest.mark.parametrize("kind", ["tree", "wtree", "mwtree"])
@pytest.mark.parametrize("seed", range(12))
def test_tree_identities(kind, seed):
    rep = check_tree_identities(random_special_instance(kind, seed))
    assert rep.passed, rep.format_text()


def test_undirected_target_matches_sympy_resistance(cycle4):
    lap = [[0] * 4 for _ in range(4)]
    for e in cycle4.edges:
        lap[e.u][e.v] = lap[e.v][e.u] = -1
        lap[e.u][e.u] += 1
        lap[e.v][e.v] += 1
    assert special_target("undirected", cycle4).tolist() == oracles.scalar_resistance_by_pinv(lap)


def test_unit_tree_as_undirected_graph():
    # a unit tree is also an admissible undirected graph; both formulas agree
    t = path(5)
    assert specialized_inverse("undirected", t) == specialized_inverse("tree", t)


def test_unit_path_distances():
    assert tree_distance_matrix(path(3)) == RMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def test_single_edge_tree():
    w = RMatrix([[2, 1], [1, 3]])
    t = WeightedTree.from_graph(UndirectedGraph.from_edges(2, [(1, 2, w)]))
    assert tree_distance_matrix(t).block(0, 1) == w
    assert check_tree_identities(t).passed


def test_star_distances():
    ws = ["1/2", 3, "5/3"]
    t = WeightedTree.from_graph(UndirectedGraph.from_edges(4, [(1, k + 2, w) for k, w in enumerate(ws)]))
    d = tree_distance_matrix(t)
    leaf = [RMatrix([[w]])[0, 0] for w in ws]
    for i in range(3):
        assert d[0, i + 1] == leaf[i]
        for j in range(3):
            if i != j:
                assert d[i + 1, j + 1] == leaf[i] + leaf[j]


def test_matrix_weighted_tree_n8_s2():
    t = WeightedTree.from_graph(random_tree(8, 2, seed=11))
    assert check_tree_identities(t).passed
    assert verify_special_case("mwtree", t).passed


def test_cycle4_undirected_kind(cycle4):
    rep = verify_special_case("undirected", cycle4)
    assert rep.passed, rep.format_text()
