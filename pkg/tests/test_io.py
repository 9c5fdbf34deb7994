import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from balres.errors import BadWeight, ParseError, SelfLoop
from balres.graph import UndirectedGraph, WeightedDigraph, random_balanced_digraph, random_tree, symmetrize
from balres.io import dump_graph, graph_to_dict, load_example, parse_any, parse_graph, parse_matrix, parse_undirected
from balres.matrix import RMatrix


def doc(**kw):
    base = {"n": 2, "s": 1, "directed": True, "edges": [{"from": 1, "to": 2, "weight": 1}, {"from": 2, "to": 1, "weight": 1}]}
    base.update(kw)
    return json.dumps(base)


def test_matrix_weighted_file(matrix_weighted):
    assert matrix_weighted.n == 4 and len(matrix_weighted.arcs) == 5
    assert matrix_weighted.weight(0, 3) == RMatrix([[3, -4], [-4, 7]]) / 5


def test_indefinite_weight_rejected():
    text = json.dumps({"n": 2, "s": 2, "edges": [{"from": 1, "to": 2, "weight": [[1, 2], [2, 1]]}]})
    with pytest.raises(BadWeight):
        parse_graph(text)


def test_singleton():
    g = parse_graph(json.dumps({"n": 1, "s": 1, "edges": []}))
    assert g == WeightedDigraph(1, 1, ())


def test_scalar_shorthand_and_strings():
    g = parse_graph(doc(edges=[{"from": 1, "to": 2, "weight": "3/4"}, {"from": 2, "to": 1, "weight": [["3/4"]]}]))
    assert g.weight(0, 1) == g.weight(1, 0) == RMatrix([["3/4"]])


@pytest.mark.parametrize(
    "text, field",
    [
        ("{", "json"),
        ("[]", "json"),
        (json.dumps({"s": 1}), "n"),
        (json.dumps({"n": 2, "s": "1"}), "s"),
        (doc(directed="yes"), "directed"),
        (doc(edges=[{"from": 1, "to": 2}]), "edges[0].weight"),
        (doc(edges=[{"from": 1, "to": 2, "weight": 0.5}]), "edges[0].weight"),
        (doc(edges=[{"from": 1, "to": 2, "weight": "1/0"}]), "edges[0].weight"),
        (doc(edges=[{"from": "1", "to": 2, "weight": 1}]), "edges[0].from"),
        (doc(s=2, edges=[{"from": 1, "to": 2, "weight": [[1, 0]]}]), "edges[0].weight"),
        (doc(n=0), "n"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.field == field
    assert str(info.value).startswith(field)


def test_validation_errors_propagate():
    with pytest.raises(SelfLoop):
        parse_graph(doc(edges=[{"from": 1, "to": 1, "weight": 1}]))


def test_undirected_files(cycle4):
    assert isinstance(cycle4, UndirectedGraph)
    text = load_example("cycle4")
    assert parse_graph(text) == symmetrize(cycle4)
    assert parse_undirected(text) == cycle4
    with pytest.raises(ParseError):
        parse_undirected(load_example("scalar_digraph"))


def test_parse_matrix():
    assert parse_matrix([["1/2", 0], [0, 1]]) == RMatrix([["1/2", 0], [0, 1]])
    with pytest.raises(ParseError):
        parse_matrix([[1, 2], [3]])


@given(st.integers(2, 6), st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_round_trip_digraph(n, s, cycles, seed):
    g = random_balanced_digraph(n, s, cycles, seed)
    assert parse_graph(dump_graph(g)) == g


@given(st.integers(1, 7), st.integers(1, 3), st.integers(0, 10**6))
def test_round_trip_undirected(n, s, seed):
    t = random_tree(n, s, seed)
    assert parse_any(dump_graph(t)) == t


def test_serialized_rationals_are_strings():
    d = graph_to_dict(WeightedDigraph.from_edges(2, [(1, 2, "1/3"), (2, 1, "1/3")]))
    assert d["edges"][0]["weight"] == [["1/3"]]
